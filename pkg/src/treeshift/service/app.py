"""HTTP service exposing the shift-operator toolkit.

Endpoints accept tree references (inline gallery strings or JSON objects),
materialize or certify level data as appropriate, and return report payloads.
Domain errors map to HTTP 400 with {"error": {"type", "message"}}.

Norm and radius endpoints prefer certified level data when the tree spec
carries closed-form level counts: scans then run at depths whose vertex
counts are far past anything materializable. Structural endpoints (describe,
witness, apply, hypercyclic, verify) always materialize, through a small
process-wide cache.
"""

from __future__ import annotations

import threading
from collections import OrderedDict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import gallery, hypercyclicity, oracle, specio, spectral
from ..exceptions import TreeShiftError
from ..shifts import apply as apply_shift
from ..shifts import operator_norm
from ..trees import LevelTree, TreeSpec, VertexId, materialize
from . import schemas

SERVICE_NAME = "treeshift"
CACHE_SLOTS = 8


class _TreeCache:
    """Tiny LRU for materialized trees, keyed by canonical ref + depth."""

    def __init__(self, slots: int = CACHE_SLOTS):
        self._slots = slots
        self._lock = threading.Lock()
        self._items: "OrderedDict[tuple, LevelTree]" = OrderedDict()

    def materialize(self, ref: specio.TreeRef, spec: TreeSpec, depth: int) -> LevelTree:
        key = (specio.canonical_ref(ref), depth)
        with self._lock:
            tree = self._items.get(key)
            if tree is not None:
                self._items.move_to_end(key)
                return tree
        tree = materialize(spec, depth)
        with self._lock:
            self._items[key] = tree
            self._items.move_to_end(key)
            while len(self._items) > self._slots:
                self._items.popitem(last=False)
        return tree


def _level_data(cache: _TreeCache, ref: specio.TreeRef, depth: int):
    """Certified levels when available, else a materialized tree."""
    spec = specio.parse_tree_ref(ref)
    if spec.certificates is not None:
        return gallery.certified_levels(spec, depth)
    return cache.materialize(ref, spec, depth)


def _strip_function(payload: dict, include: bool, max_entries: int) -> dict:
    w = payload.get("witness")
    if isinstance(w, dict) and isinstance(w.get("entries"), list):
        n = len(w["entries"])
        if not include or n > max_entries:
            payload["witness"] = {"mode": w.get("mode"), "entries": None, "entry_count": n,
                                  "omitted": True}
        else:
            payload["witness"] = {**w, "entry_count": n, "omitted": False}
    return payload


def create_app() -> FastAPI:
    app = FastAPI(title=SERVICE_NAME, version="0.1.0")
    cache = _TreeCache()

    @app.exception_handler(TreeShiftError)
    async def _domain_error(_: Request, exc: TreeShiftError):
        body = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        return JSONResponse(status_code=400, content=body)

    @app.get("/", response_model=schemas.ServiceInfo)
    def info() -> schemas.ServiceInfo:
        return schemas.ServiceInfo(
            name=SERVICE_NAME,
            version="0.1.0",
            endpoints=["/describe", "/norm", "/radius", "/witness", "/hypercyclic",
                       "/gallery/list", "/gallery/self_test", "/verify", "/apply"],
        )

    @app.post("/describe")
    def describe(req: schemas.DescribeRequest) -> dict:
        spec = specio.parse_tree_ref(req.tree)
        tree = cache.materialize(req.tree, spec, req.depth)
        leaf = tree.find_leaf()
        out = {"label": spec.describe(), "kind": spec.kind, "params": spec.params}
        out.update(
            depth=tree.depth,
            total_vertices=tree.total_vertices,
            level_sizes=[int(x) for x in tree.level_sizes],
            leafless_up_to_depth=leaf is None,
            first_leaf=None if leaf is None else [leaf.level, leaf.index],
            degree_histograms={
                str(n): tree.degree_histogram(n)
                for n in range(min(req.histogram_levels, tree.depth))
            },
        )
        return specio.jsonable(out)

    @app.post("/norm")
    def norm(req: schemas.NormRequest) -> dict:
        data = _level_data(cache, req.tree, req.depth)
        report = operator_norm(data, req.op, req.p, req.power)
        return specio.jsonable(report)

    @app.post("/radius")
    def radius(req: schemas.RadiusRequest) -> dict:
        data = _level_data(cache, req.tree, req.depth)
        report = spectral.spectral_radius(data, req.op, req.p, req.max_power)
        return specio.jsonable(report)

    @app.post("/witness")
    def witness(req: schemas.WitnessRequest) -> dict:
        spec = specio.parse_tree_ref(req.tree)
        tree = cache.materialize(req.tree, spec, req.depth)
        if req.kind == "point_spectrum_S":
            report = spectral.point_spectrum_S(tree)
            out = specio.jsonable(report)
            out["identity"] = "S f = lambda f"
            out["verdict"] = out.pop("kind")
            return out
        if req.lam is None:
            raise TreeShiftError(f"witness kind {req.kind} needs a lambda value")
        lam = specio.parse_scalar(req.lam)
        if req.kind == "eigenfunction_B":
            report = spectral.eigenfunction_B(tree, lam, p=req.p, mode=req.mode)
        elif req.kind == "resolvent_S":
            vertex = None if req.vertex is None else VertexId(*req.vertex)
            report = spectral.resolvent_witness_S(tree, lam, w=vertex, p=req.p, mode=req.mode)
        else:
            report = spectral.nonsurjectivity_blowup_S(tree, lam, p=req.p, mode=req.mode)
        out = specio.jsonable(report)
        return _strip_function(out, req.include_function, req.max_entries)

    @app.post("/hypercyclic")
    def hypercyclic(req: schemas.HypercyclicRequest) -> dict:
        spec = specio.parse_tree_ref(req.tree)
        tree = cache.materialize(req.tree, spec, req.depth)
        report = hypercyclicity.verdict(tree, req.op)
        out = specio.jsonable(report)
        if req.op == "B" and req.suite:
            suite = hypercyclicity.kgs_suite(
                tree, samples=req.samples, n_max=req.n_max, p=req.p, seed=req.seed
            )
            out["suite"] = specio.jsonable(suite)
        return out

    @app.get("/gallery/list")
    def gallery_list() -> dict:
        return {"entries": specio.jsonable(gallery.list_entries())}

    @app.post("/gallery/self_test")
    def gallery_self_test(req: schemas.GallerySelfTestRequest) -> dict:
        entry = gallery.build(req.name, req.params)
        result = gallery.self_test(
            entry, depth=req.depth, max_power=req.max_power, p_values=tuple(req.p_values)
        )
        return specio.jsonable(result)

    @app.post("/verify")
    def verify(req: schemas.VerifyRequest) -> dict:
        spec = specio.parse_tree_ref(req.tree)
        tree = cache.materialize(req.tree, spec, req.depth)
        lower = oracle.randomized_norm_lower_bound(
            tree, req.op, req.power, req.p,
            trials=req.trials, seed=req.seed, max_level=req.max_level,
        )
        out = {"lower_bound": specio.jsonable(lower), "extremal": None}
        if req.extremal:
            ext = oracle.extremal_attainment(tree, req.op, req.power, req.p)
            out["extremal"] = specio.jsonable(ext)
        return out

    @app.post("/apply")
    def apply_endpoint(req: schemas.ApplyRequest) -> dict:
        spec = specio.parse_tree_ref(req.tree)
        tree = cache.materialize(req.tree, spec, req.depth)
        f = specio.load_function(req.function)
        g = apply_shift(tree, f, req.op, req.power)
        return {"mode": g.mode, "entries": specio.dump_function(g)}

    return app


app = create_app()
