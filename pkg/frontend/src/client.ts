/**
 * WebSocket client for the telemetry channel. The socket constructor is
 * injectable so tests can drive the client with a scripted fake.
 */

import { buttonMessage, frameMessage, parseServerMessage, ServerMessage } from "./protocol";
import { ConnectionStatus } from "./store";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onerror: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

const defaultFactory: SocketFactory = (url) => new WebSocket(url);

export interface ClientHandlers {
  onStatus(status: ConnectionStatus, detail: string): void;
  onMessage(message: ServerMessage): void;
  onBadMessage?(raw: string): void;
}

export class TelemetryClient {
  private socket: SocketLike | null = null;
  private open = false;
  private sawError = false;
  private closing = false;

  constructor(
    private readonly handlers: ClientHandlers,
    private readonly factory: SocketFactory = defaultFactory,
  ) {}

  get connected(): boolean {
    return this.open;
  }

  connect(url: string): void {
    this.close();
    this.closing = false;
    this.sawError = false;
    let socket: SocketLike;
    try {
      socket = this.factory(url);
    } catch (err) {
      this.handlers.onStatus("error", String(err));
      return;
    }
    this.socket = socket;
    this.handlers.onStatus("connecting", url);
    socket.onopen = () => {
      if (socket !== this.socket) return;
      this.open = true;
      this.handlers.onStatus("connected", url);
    };
    socket.onerror = () => {
      if (socket !== this.socket) return;
      this.sawError = true;
    };
    socket.onclose = () => {
      if (socket !== this.socket) return;
      this.open = false;
      this.socket = null;
      if (this.closing) {
        this.handlers.onStatus("disconnected", "");
      } else if (this.sawError) {
        this.handlers.onStatus("error", "connection failed");
      } else {
        this.handlers.onStatus("disconnected", "connection lost");
      }
    };
    socket.onmessage = (ev) => {
      if (socket !== this.socket) return;
      const raw = String(ev.data);
      const message = parseServerMessage(raw);
      if (message) {
        this.handlers.onMessage(message);
      } else {
        this.handlers.onBadMessage?.(raw);
      }
    };
  }

  /** Send a frame control message; false when there is no open socket. */
  sendFrame(text: string): boolean {
    if (!this.open || !this.socket) return false;
    this.socket.send(frameMessage(text));
    return true;
  }

  /** Send the virtual-button control message. */
  sendButton(): boolean {
    if (!this.open || !this.socket) return false;
    this.socket.send(buttonMessage());
    return true;
  }

  /** Intentional disconnect; the close event reports no error. */
  close(): void {
    const socket = this.socket;
    if (!socket) return;
    this.closing = true;
    this.open = false;
    this.socket = null;
    socket.close();
    this.handlers.onStatus("disconnected", "");
  }
}
