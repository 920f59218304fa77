"""On-disk cache of multiplication tables and differential-operator bases.

Layout: ``<dir>/<tower hash>/multtable.txt`` and
``<dir>/<tower hash>/diffops-<subfield hash>.txt``.  Every file starts with a
header naming the tool version; a mismatching or unreadable entry is ignored
(and rewritten), and writes go through a temporary file plus rename.
"""

import logging
import os
import tempfile

from galtower import __version__
from galtower.errors import CorruptCache
from galtower.expr import parse_element
from galtower.operators import DiffOpAlgebra, diffop_filtration

log = logging.getLogger("galtower.cache")


def struct_to_text(T):
    K = T.K
    lines = [f"n {T.n}"]
    for i in range(T.n):
        for j in range(i, T.n):
            entry = " ; ".join(f"{k}={K.to_str(c)}" for k, c in T.struct[i][j])
            lines.append(f"{i} {j} : {entry}")
    return "\n".join(lines) + "\n"


def struct_from_text(K, n, text):
    lines = text.splitlines()
    if lines[0] != f"n {n}":
        raise CorruptCache("dimension mismatch")
    struct = [[None] * n for _ in range(n)]
    for line in lines[1:]:
        head, _, body = line.partition(" : ")
        i, j = (int(x) for x in head.split())
        entry = []
        for item in body.split(" ; ") if body else []:
            k, _, c = item.partition("=")
            entry.append((int(k), parse_element(K, c)))
        struct[i][j] = struct[j][i] = tuple(entry)
    if any(x is None for row in struct for x in row):
        raise CorruptCache("incomplete multiplication table")
    return struct


class Cache:
    def __init__(self, root):
        self.root = root
        self.hits = 0
        self.misses = 0
        self.writable = True

    def _path(self, tower_hash, name):
        return os.path.join(self.root, tower_hash, name)

    def _header(self, kind, tower_hash, extra=""):
        return f"galtower {__version__} {kind} {tower_hash}{(' ' + extra) if extra else ''}"

    def read(self, tower_hash, name, header):
        path = self._path(tower_hash, name)
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except FileNotFoundError:
            return None
        except OSError as exc:
            log.warning("cache entry %s unreadable (%s); recomputing", path, exc)
            return None
        first, _, body = text.partition("\n")
        if first != header:
            log.info("cache entry %s is stale; recomputing", path)
            return None
        return body

    def write(self, tower_hash, name, header, body):
        if not self.writable:
            return
        directory = os.path.join(self.root, tower_hash)
        try:
            os.makedirs(directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(header + "\n" + body)
            os.replace(tmp, os.path.join(directory, name))
        except OSError as exc:
            self.writable = False
            log.warning("cache directory not writable (%s); continuing in memory", exc)

    # -- multiplication tables ---------------------------------------------

    def load_struct(self, spec, K, n):
        h = spec.content_hash()
        header = self._header("multtable", h)
        body = self.read(h, "multtable.txt", header)
        if body is None:
            self.misses += 1
            return None
        try:
            struct = struct_from_text(K, n, body)
        except (CorruptCache, ValueError, IndexError) as exc:
            log.warning("corrupt cache entry for %s (%s); recomputing", h, exc)
            self.misses += 1
            return None
        self.hits += 1
        return struct

    def store_struct(self, T):
        h = T.spec.content_hash()
        self.write(h, "multtable.txt", self._header("multtable", h), struct_to_text(T))

    # -- differential operators --------------------------------------------

    def diffops_loader(self, T, M):
        h = T.spec.content_hash()
        sub = (M or T.base_subfield()).content_hash()
        name = f"diffops-{sub}.txt"
        header = self._header("diffops", h, sub)
        body = self.read(h, name, header)
        if body is not None:
            try:
                D = DiffOpAlgebra.from_text(T, body, M)
                self.hits += 1
                return D
            except (ValueError, IndexError) as exc:
                log.warning("corrupt cache entry %s (%s); recomputing", name, exc)
        self.misses += 1
        D = diffop_filtration(T, M)
        self.write(h, name, header, D.to_text())
        return D


def build_tower_cached(spec, cache=None, **kwargs):
    from galtower.tower import FieldTower

    if cache is None:
        return FieldTower(spec, **kwargs)
    K = spec.base.build()
    n = 1
    for g in spec.generators:
        n *= g.m
    struct = cache.load_struct(spec, K, n) if spec.generators else None
    T = FieldTower(spec, struct=struct, _K=K, **kwargs)
    if struct is None:
        cache.store_struct(T)
    return T
