/** DOM wiring for the drawing pad. */
import { ALPHABET } from "./alphabet.js";
import { ApiError, modelInfo, recognize, submitSample } from "./api.js";
import { CANVAS_SIZE, emptyState, gridRows, hasInk, rasterize, } from "./grid.js";
import { canClear, canRecognize, canSubmit, submitHint } from "./state.js";
const state = emptyState();
const flags = { busy: false };
const el = {
    canvas: document.getElementById("pad"),
    letters: document.getElementById("letters"),
    recognize: document.getElementById("recognize"),
    submit: document.getElementById("submit"),
    clear: document.getElementById("clear"),
    result: document.getElementById("result"),
    resultLetter: document.getElementById("result-letter"),
    bars: document.getElementById("bars"),
    preview: document.getElementById("preview"),
    banner: document.getElementById("banner"),
    hint: document.getElementById("hint"),
    stored: document.getElementById("stored"),
    model: document.getElementById("model-info"),
};
const ctx = el.canvas.getContext("2d");
function refreshControls() {
    el.recognize.disabled = !canRecognize(state, flags);
    el.submit.disabled = !canSubmit(state, flags);
    el.clear.disabled = !canClear(state, flags);
    el.hint.textContent = submitHint(state) ?? "";
}
function redraw() {
    ctx.clearRect(0, 0, CANVAS_SIZE, CANVAS_SIZE);
    ctx.lineWidth = 3;
    ctx.lineCap = "round";
    ctx.lineJoin = "round";
    ctx.strokeStyle = "#1b1b1b";
    ctx.fillStyle = "#1b1b1b";
    for (const stroke of state.strokes) {
        if (stroke.length === 1) {
            ctx.beginPath();
            ctx.arc(stroke[0].x, stroke[0].y, 1.5, 0, Math.PI * 2);
            ctx.fill();
            continue;
        }
        ctx.beginPath();
        ctx.moveTo(stroke[0].x, stroke[0].y);
        for (const p of stroke.slice(1))
            ctx.lineTo(p.x, p.y);
        ctx.stroke();
    }
}
function showError(message) {
    el.banner.textContent = `${message} (click to dismiss)`;
    el.banner.classList.remove("hidden");
}
el.banner.addEventListener("click", () => el.banner.classList.add("hidden"));
function canvasPoint(event) {
    const rect = el.canvas.getBoundingClientRect();
    return {
        x: ((event.clientX - rect.left) / rect.width) * CANVAS_SIZE,
        y: ((event.clientY - rect.top) / rect.height) * CANVAS_SIZE,
    };
}
let drawing = false;
el.canvas.addEventListener("pointerdown", (event) => {
    drawing = true;
    el.canvas.setPointerCapture(event.pointerId);
    state.strokes.push([canvasPoint(event)]);
    redraw();
    refreshControls();
});
el.canvas.addEventListener("pointermove", (event) => {
    if (!drawing)
        return;
    state.strokes[state.strokes.length - 1].push(canvasPoint(event));
    redraw();
});
el.canvas.addEventListener("pointerup", () => {
    drawing = false;
    refreshControls();
});
function buildLetterPicker() {
    for (const letter of ALPHABET) {
        const button = document.createElement("button");
        button.className = "letter";
        button.textContent = letter.display;
        button.title = `${letter.name} (${letter.index})`;
        button.addEventListener("click", () => {
            state.currentLabel = letter.index;
            for (const other of el.letters.querySelectorAll("button")) {
                other.classList.toggle("selected", other === button);
            }
            refreshControls();
        });
        el.letters.appendChild(button);
    }
}
function renderResult(result) {
    el.result.classList.remove("hidden");
    el.resultLetter.textContent = result.letter;
    el.bars.innerHTML = "";
    result.outputs.forEach((value, i) => {
        const wrap = document.createElement("div");
        wrap.className = "bar-wrap";
        const bar = document.createElement("div");
        bar.className = "bar";
        bar.style.height = `${Math.round(value * 100)}%`;
        bar.title = `output ${i}: ${value.toFixed(4)}`;
        wrap.appendChild(bar);
        el.bars.appendChild(wrap);
    });
    renderPreview(result.glyph);
}
function renderPreview(rows) {
    const side = rows.length;
    const cell = Math.floor(el.preview.width / side);
    const pctx = el.preview.getContext("2d");
    pctx.clearRect(0, 0, el.preview.width, el.preview.height);
    pctx.fillStyle = "#11508a";
    for (let r = 0; r < side; r++) {
        for (let c = 0; c < side; c++) {
            if (rows[r][c] === "1")
                pctx.fillRect(c * cell, r * cell, cell, cell);
        }
    }
}
async function withBusy(action) {
    flags.busy = true;
    refreshControls();
    try {
        await action();
    }
    catch (error) {
        // the drawing is preserved so the user can retry
        if (error instanceof ApiError) {
            showError(`server said ${error.status}: ${error.message}`);
        }
        else {
            showError(`request failed: ${error.message}`);
        }
    }
    finally {
        flags.busy = false;
        refreshControls();
    }
}
el.recognize.addEventListener("click", () => withBusy(async () => {
    const result = await recognize(gridRows(rasterize(state.strokes)));
    renderResult(result);
}));
el.submit.addEventListener("click", () => withBusy(async () => {
    if (state.currentLabel === null || !hasInk(state))
        return;
    const response = await submitSample(gridRows(rasterize(state.strokes)), state.currentLabel);
    el.stored.textContent = `${response.stored} sample${response.stored === 1 ? "" : "s"} stored`;
    state.strokes = [];
    redraw();
}));
el.clear.addEventListener("click", () => {
    state.strokes = [];
    redraw();
    refreshControls();
});
buildLetterPicker();
refreshControls();
modelInfo()
    .then((info) => {
    el.model.textContent = `model ${info.n_in}-${info.n_hidden}-${info.n_out}, ${info.trained_epochs} epochs`;
})
    .catch(() => {
    el.model.textContent = "no model loaded";
});
