// WebSocket client: JSON in, JSON out, auto-reconnect with backoff.

import type { ClientMessage, ServerMessage } from "./protocol.js";

export interface Connection {
  send(message: ClientMessage): void;
  close(): void;
}

export function connect(
  url: string,
  onMessage: (message: ServerMessage) => void,
  onOpen?: () => void,
): Connection {
  let socket: WebSocket | null = null;
  let closed = false;
  let retryMs = 250;

  const open = () => {
    socket = new WebSocket(url);
    socket.onopen = () => {
      retryMs = 250;
      onOpen?.();
    };
    socket.onmessage = (event) => {
      try {
        onMessage(JSON.parse(event.data) as ServerMessage);
      } catch (err) {
        console.warn("malformed message skipped", err);
      }
    };
    socket.onclose = () => {
      if (closed) return;
      setTimeout(open, retryMs);
      retryMs = Math.min(4000, retryMs * 2);
    };
  };
  open();

  return {
    send(message: ClientMessage) {
      if (socket && socket.readyState === WebSocket.OPEN) {
        socket.send(JSON.stringify(message));
      }
    },
    close() {
      closed = true;
      socket?.close();
    },
  };
}
