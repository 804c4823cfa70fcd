"""HTTP face of the collect/train/recognize loop.

Endpoints (JSON over HTTP/1.1):
  POST /recognize  {"glyph": [30 strings of 30 "0"/"1"]} -> label + activations
  POST /samples    {"glyph": [...], "label_index": 0..31, "writer": "..."}
  GET  /model      -> static metadata of the loaded model
  GET  /           -> the drawing-pad static assets

Recognition is read-only over an immutable model, so requests run freely in
parallel; sample appends are funneled through one lock and fsynced before
the response is sent.
"""

from __future__ import annotations

import json
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .dataset import ALPHABET, N_CLASSES, Sample, label_for, load
from .mlp import Mlp
from .pipeline import PipelineConfig, Recognition, recognize
from .raster import binary_from_rows
from .skeleton import EmptyGlyphError, GLYPH_SIDE, glyph_rows, normalize, thin

DEFAULT_PORT = 8077
_STATIC_DIR = Path(__file__).parent / "static"
_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
}


class ServiceError(Exception):
    """Wraps an HTTP status + reason for request-handling failures."""

    def __init__(self, status: int, reason: str):
        super().__init__(reason)
        self.status = status
        self.reason = reason


def _parse_glyph_rows(body: dict):
    rows = body.get("glyph")
    if (
        not isinstance(rows, list)
        or len(rows) != GLYPH_SIDE
        or any(not isinstance(r, str) or len(r) != GLYPH_SIDE for r in rows)
    ):
        raise ServiceError(400, f"glyph must be {GLYPH_SIDE} strings of {GLYPH_SIDE} characters")
    try:
        return binary_from_rows(rows)
    except ValueError as e:
        raise ServiceError(400, str(e)) from None


class RecognizerApp:
    """Request logic, independent of the HTTP plumbing (testable directly)."""

    def __init__(self, model: Mlp | None, samples_path: str | Path, trained_epochs: int = 0):
        self.model = model
        self.pipeline_cfg = PipelineConfig.for_model(model) if model is not None else None
        self.samples_path = Path(samples_path)
        self.trained_epochs = trained_epochs
        self._write_lock = threading.Lock()
        self._stored = len(load(self.samples_path)) if self.samples_path.exists() else 0

    def recognize_grid(self, body: dict) -> dict:
        if self.pipeline_cfg is None:
            raise ServiceError(503, "no model loaded")
        img = _parse_glyph_rows(body)
        try:
            result: Recognition = recognize(img, self.pipeline_cfg)
        except EmptyGlyphError:
            raise ServiceError(422, "nothing written") from None
        return {
            "label_index": result.label.index,
            "letter": result.label.display,
            "outputs": [float(v) for v in result.outputs],
            "glyph": glyph_rows(result.glyph),
        }

    def store_sample(self, body: dict) -> dict:
        label_index = body.get("label_index")
        if not isinstance(label_index, int) or not 0 <= label_index < N_CLASSES:
            raise ServiceError(400, f"label_index must be an integer in [0, {N_CLASSES - 1}]")
        writer = body.get("writer", "")
        if not isinstance(writer, str) or "|" in writer or "\n" in writer:
            raise ServiceError(400, "writer must be a string without '|' or newlines")
        img = _parse_glyph_rows(body)
        try:
            glyph = normalize(thin(img))
        except EmptyGlyphError:
            raise ServiceError(400, "empty glyph") from None
        sample = Sample(label_index, glyph, writer=writer, source="canvas")
        bits = "".join("1" if v else "0" for v in sample.glyph.bits.ravel())
        record = f"{sample.label_index}|{sample.writer}|{sample.source}|{bits}\n"
        with self._write_lock:
            try:
                with open(self.samples_path, "a", encoding="utf-8") as f:
                    f.write(record)
                    f.flush()
                    os.fsync(f.fileno())
            except OSError as e:
                raise ServiceError(500, f"storage failure: {e}") from None
            self._stored += 1
            return {"stored": self._stored}

    def model_info(self) -> dict:
        if self.model is None:
            raise ServiceError(503, "no model loaded")
        return {
            "n_in": self.model.n_in,
            "n_hidden": self.model.n_hidden,
            "n_out": self.model.n_out,
            "trained_epochs": self.trained_epochs,
        }

    def alphabet(self) -> dict:
        return {"letters": [{"index": i, "display": d, "name": n} for i, (d, n) in enumerate(ALPHABET)]}


class _Handler(BaseHTTPRequestHandler):
    app: RecognizerApp  # set on the subclass by make_server
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            raise ServiceError(400, "request body is not valid JSON") from None
        if not isinstance(body, dict):
            raise ServiceError(400, "request body must be a JSON object")
        return body

    def do_POST(self):
        try:
            body = self._read_json()
            if self.path == "/recognize":
                self._send_json(200, self.app.recognize_grid(body))
            elif self.path == "/samples":
                self._send_json(200, self.app.store_sample(body))
            else:
                self._send_json(404, {"error": f"no such endpoint {self.path}"})
        except ServiceError as e:
            self._send_json(e.status, {"error": e.reason})

    def do_GET(self):
        try:
            if self.path == "/model":
                self._send_json(200, self.app.model_info())
            elif self.path == "/alphabet":
                self._send_json(200, self.app.alphabet())
            else:
                self._send_static(self.path)
        except ServiceError as e:
            self._send_json(e.status, {"error": e.reason})

    def _send_static(self, path: str) -> None:
        name = "index.html" if path in ("/", "") else path.lstrip("/")
        target = (_STATIC_DIR / name).resolve()
        if not str(target).startswith(str(_STATIC_DIR.resolve())) or not target.is_file():
            self._send_json(404, {"error": f"not found: {path}"})
            return
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", _CONTENT_TYPES.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def make_server(app: RecognizerApp, port: int = DEFAULT_PORT, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Bound but not yet running server; port 0 picks an ephemeral port."""
    handler = type("BoundHandler", (_Handler,), {"app": app})
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server


def serve(app: RecognizerApp, port: int = DEFAULT_PORT, host: str = "127.0.0.1") -> None:
    """Run the service until interrupted; port 0 binds an ephemeral port."""
    server = make_server(app, port, host)
    bound_host, bound_port = server.server_address[:2]
    print(f"listening on http://{bound_host}:{bound_port}", flush=True)
    try:
        server.serve_forever()
    finally:
        server.server_close()
