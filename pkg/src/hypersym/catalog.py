"""Line-oriented group catalog.

Each non-blank, non-``#`` line reads::

    name <TAB> degree <TAB> tag,tag,... <TAB> gen1;gen2;...

with generators in 1-based cycle notation.  Recognised tags are checked on
load: ``order=N``, ``transitive``, ``intransitive``, ``primitive``,
``imprimitive``, ``set-transitive``, ``symmetric`` and ``alternating``.
Other tags (``exception-candidate``, ``frobenius``, ...) are carried along.
"""
from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from . import constructions as C
from .errors import CatalogError
from .groups import PermGroup, kset_orbit_count, nontrivial_block
from .perm import Permutation

CATALOG_ENV = "HYPERSYM_CATALOG"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    generators: tuple
    tags: frozenset
    group: Optional[PermGroup] = field(default=None, compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    def to_line(self) -> str:
        return "\t".join([self.name, str(self.degree), ",".join(sorted(self.tags)),
                          ";".join(self.generators)])


def _parse_line(line, lineno):
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 4:
        raise CatalogError(f"expected 4 tab-separated fields, got {len(parts)}", lineno)
    name, degree, tags, gens = (p.strip() for p in parts)
    try:
        degree = int(degree)
    except ValueError:
        raise CatalogError(f"degree {degree!r} is not an integer", lineno) from None
    if degree < 1:
        raise CatalogError(f"degree must be positive, got {degree}", lineno)
    tags = frozenset(t.strip() for t in tags.split(",") if t.strip())
    gen_strings = tuple(g.strip() for g in gens.split(";") if g.strip())
    try:
        perms = [Permutation.parse(g, degree, one_based=True) for g in gen_strings]
    except ValueError as exc:
        raise CatalogError(f"{name}: {exc}", lineno) from None
    return name, degree, gen_strings, tags, perms


def _validate(name, G, tags, lineno):
    def fail(msg):
        raise CatalogError(f"{name}: {msg}", lineno)

    n = G.degree
    for tag in tags:
        if tag.startswith("order="):
            want = int(tag[len("order="):])
            if G.order != want:
                fail(f"order is {G.order}, tagged {want}")
    transitive = G.is_transitive()
    if "transitive" in tags and not transitive:
        fail("tagged transitive but is not")
    if "intransitive" in tags and transitive:
        fail("tagged intransitive but is transitive")
    if {"primitive", "imprimitive"} & tags:
        if not transitive:
            fail("primitivity tag on an intransitive group")
        primitive = nontrivial_block(G) is None
        if "primitive" in tags and not primitive:
            fail("tagged primitive but has a nontrivial block")
        if "imprimitive" in tags and primitive:
            fail("tagged imprimitive but is primitive")
    if "set-transitive" in tags:
        for k in range(1, n // 2 + 1):
            if kset_orbit_count(G, k) != 1:
                fail(f"tagged set-transitive but has several orbits on {k}-sets")
    if "symmetric" in tags and G.order != math.factorial(n):
        fail("tagged symmetric but order is not n!")
    if "alternating" in tags and G.order != math.factorial(n) // 2:
        fail("tagged alternating but order is not n!/2")


def parse_catalog(text: str) -> list:
    """Parse and validate catalog text."""
    entries = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, degree, gen_strings, tags, perms = _parse_line(line, lineno)
        G = PermGroup(degree, perms)
        _validate(name, G, tags, lineno)
        entries.append(CatalogEntry(name, degree, gen_strings, tags, G))
    return entries


def builtin_catalog_text() -> str:
    return resources.files("hypersym").joinpath("catalog.tsv").read_text()


def load_catalog(source=None) -> list:
    """Load a catalog from a path, an open file, or the builtin copy.

    ``source=None`` consults the ``HYPERSYM_CATALOG`` environment variable
    before falling back to the builtin catalog; ``"builtin"`` forces it.
    """
    if source is None:
        source = os.environ.get(CATALOG_ENV) or "builtin"
    if source == "builtin":
        return parse_catalog(builtin_catalog_text())
    if hasattr(source, "read"):
        return parse_catalog(source.read())
    with open(source) as fh:
        return parse_catalog(fh.read())


def find_entry(entries, name: str) -> CatalogEntry:
    for e in entries:
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


def _entry(name, G, tags):
    tags = set(tags) | {f"order={G.order}"}
    return CatalogEntry(name, G.degree, tuple(g.to_cycles(one_based=True) for g in G.generators),
                        frozenset(tags), G)


def generate_builtin_entries() -> list:
    """Regenerate the builtin catalog from the constructors."""
    out = []
    prim = ("transitive", "primitive")
    imprim = ("transitive", "imprimitive")
    for n in range(5, 14):
        is_prime = all(n % d for d in range(2, n))
        out.append(_entry(f"C{n}", C.cyclic_group(n),
                          prim + ("cyclic",) if is_prime else imprim + ("cyclic",)))
        out.append(_entry(f"D{n}", C.dihedral_group(n),
                          prim + ("dihedral",) if is_prime else imprim + ("dihedral",)))
        if is_prime:
            for d in range(3, n):
                if (n - 1) % d == 0:
                    out.append(_entry(f"F{n * d}", C.frobenius_group(n, d),
                                      prim + ("frobenius",)))
        if n <= 7:
            out.append(_entry(f"A{n}", C.alternating_group(n), prim + ("alternating",)))
            out.append(_entry(f"S{n}", C.symmetric_group(n), prim + ("symmetric",)))
    out += [
        _entry("PSL(2,5)", C.projective_group(5, "PSL"), prim + ("projective",)),
        _entry("PGL(2,5)", C.projective_group(5, "PGL"), prim + ("projective", "set-transitive")),
        _entry("PGL(3,2)", C.fano_group(), prim + ("projective",)),
        _entry("PSL(2,7)", C.projective_group(7, "PSL"), prim + ("projective",)),
        _entry("PGL(2,7)", C.projective_group(7, "PGL"), prim + ("projective",)),
        _entry("AGL(1,8)", C.affine_group(8), prim + ("affine",)),
        _entry("AGammaL(1,8)", C.affine_group(8, True), prim + ("affine",)),
        _entry("AGL(3,2)", C.affine_space_group(2, 3), prim + ("affine",)),
        _entry("PGL(2,8)", C.projective_group(8, "PGL"), prim + ("projective", "set-transitive")),
        _entry("PGammaL(2,8)", C.projective_group(8, "PGammaL"),
               prim + ("projective", "set-transitive")),
        _entry("AGL(1,9)", C.affine_group(9), prim + ("affine",)),
        _entry("AGammaL(1,9)", C.affine_group(9, True), prim + ("affine",)),
        _entry("AGL(2,3)", C.affine_space_group(3, 2), prim + ("affine",)),
        _entry("S3wrS2", C.wreath_product_action(3, 2), prim + ("wreath",)),
        _entry("PSL(2,9)", C.projective_group(9, "PSL"), prim + ("projective",)),
        _entry("PGL(2,9)", C.projective_group(9, "PGL"), prim + ("projective",)),
        _entry("PGammaL(2,9)", C.projective_group(9, "PGammaL"), prim + ("projective",)),
        _entry("A5on2sets", C.induced_kset_action(C.alternating_group(5), 2)[0],
               prim + ("kset-action",)),
        _entry("S5on2sets", C.induced_kset_action(C.symmetric_group(5), 2)[0],
               prim + ("kset-action",)),
    ]
    extra = {"F20": {"set-transitive"}, "F21": {"exception-candidate"}}
    out = [_entry(e.name, e.group, e.tags | extra.get(e.name, set())) for e in out]
    out = [_entry(e.name, e.group, e.tags | {"exception-candidate"})
           if "set-transitive" in e.tags else e for e in out]
    out.sort(key=lambda e: (e.degree, e.order, e.name))
    return out


def render_catalog(entries) -> str:
    header = ("# name\tdegree\ttags\tgenerators (1-based cycles, ';'-separated)\n")
    return header + "".join(e.to_line() + "\n" for e in entries)
