"""Bundled strongly-regular-graph families (graph6 files under walkfp/data)."""

from __future__ import annotations

import re
from importlib import resources

from .graphs import Graph, SrgParams, decode_graph6

_NAME_RE = re.compile(r"srg_(\d+)_(\d+)_(\d+)_(\d+)\.g6")


def _data_root():
    return resources.files("walkfp") / "data"


def list_families() -> list[SrgParams]:
    """Family parameters of every bundled dataset, sorted by vertex count."""
    out = []
    for entry in _data_root().iterdir():
        m = _NAME_RE.fullmatch(entry.name)
        if m:
            out.append(SrgParams(*(int(x) for x in m.groups())))
    return sorted(out, key=lambda p: p.as_tuple())


def load_family(params: SrgParams | tuple[int, int, int, int]) -> list[Graph]:
    """All bundled graphs of one family, in file order."""
    if isinstance(params, SrgParams):
        params = params.as_tuple()
    name = "srg_" + "_".join(str(x) for x in params) + ".g6"
    path = _data_root() / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled family {params}")
    graphs = []
    for line in path.read_text(encoding="ascii").splitlines():
        line = line.strip()
        if line:
            graphs.append(decode_graph6(line))
    return graphs


def petersen() -> Graph:
    return load_family((10, 3, 0, 1))[0]
