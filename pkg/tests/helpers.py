"""Oracles and generators shared by the test modules."""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from hypothesis import strategies as st

from celltrace.frame import Column, Frame

CEST = timezone(timedelta(hours=2), "CEST")
FIXED_TIME = datetime(2020, 5, 8, 15, 24, 36, tzinfo=CEST)


def fixed_clock() -> datetime:
    return FIXED_TIME


def excerpt() -> Frame:
    """The three published supermarket records."""
    return Frame.from_dict({
        "id": ["SPM01", "SPM02", "SPM03"],
        "staff": [75, 9, None],
        "turnover": [None, 1607, 6886],
        "other.rev": [None, None, -33],
        "total.rev": [1130, 1607, 6919],
    })


# -- brute-force diff oracle -------------------------------------------------

def _same(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return type(a) is type(b) and a == b


def brute_force_diff(old: Frame, new: Frame, key: str, shared_only: bool = False) -> set:
    """Compare every (key, column) cell of the union (or intersection) grid."""
    def table(frame):
        keys = frame[key]
        return {(type(k), k): {c.name: c.cells[i] for c in frame.columns} for i, k in enumerate(keys)}

    a, b = table(old), table(new)
    if shared_only:
        keys = a.keys() & b.keys()
        cols = set(old.names) & set(new.names)
    else:
        keys = a.keys() | b.keys()
        cols = set(old.names) | set(new.names)
    out = set()
    for k in keys:
        for c in cols:
            x = a.get(k, {}).get(c)
            y = b.get(k, {}).get(c)
            if not _same(x, y):
                out.add(((type(k[1]), k[1]), c, _tag(x), _tag(y)))
    return out


def _tag(v):
    return (type(v).__name__, v)


def as_set(changes, restrict_keys=None, restrict_cols=None) -> set:
    out = set()
    for ch in changes:
        if restrict_keys is not None and (type(ch.key), ch.key) not in restrict_keys:
            continue
        if restrict_cols is not None and ch.variable not in restrict_cols:
            continue
        out.add(((type(ch.key), ch.key), ch.variable, _tag(ch.old), _tag(ch.new)))
    return out


# -- random frames -----------------------------------------------------------

def random_cell(rng: random.Random, kind: str, p_missing: float):
    if rng.random() < p_missing:
        return None
    if kind == "number":
        return float(rng.choice([rng.randint(-5, 5), round(rng.uniform(-100, 100), rng.randint(0, 4))]))
    if kind == "text":
        return rng.choice(["a", "b", "c", "NA", "", "12", "x,y", 'q"t', "TRUE"])
    if kind == "bool":
        return rng.random() < 0.5
    return random_cell(rng, rng.choice(["number", "text", "bool"]), 0.0)


def random_frame_pair(rng: random.Random, max_rows: int = 20, max_cols: int = 8):
    """An old frame and an edited copy: cells changed, rows/columns added and removed."""
    p_missing = rng.choice([0.0, 0.1, 0.3, 0.7])
    ncol = rng.randint(1, max_cols - 1)
    kinds = [rng.choice(["number", "text", "bool", "mixed"]) for _ in range(ncol)]
    names = [f"v{j}" for j in range(ncol)]
    nrow = rng.randint(0, max_rows)
    keys = [f"K{i:02d}" for i in rng.sample(range(60), nrow)]
    old = {"id": keys}
    for n, k in zip(names, kinds):
        old[n] = [random_cell(rng, k, p_missing) for _ in range(nrow)]

    new = {n: list(v) for n, v in old.items()}
    rows = list(range(nrow))
    for _ in range(rng.randint(0, nrow * ncol)):
        if not rows:
            break
        j = rng.randrange(ncol)
        new[names[j]][rng.choice(rows)] = random_cell(rng, kinds[j], p_missing)
    if rows and rng.random() < 0.3:
        drop = set(rng.sample(rows, rng.randint(1, len(rows))))
        new = {n: [x for i, x in enumerate(v) if i not in drop] for n, v in new.items()}
    if rng.random() < 0.3:
        fresh = [k for k in (f"K{i:02d}" for i in range(60, 70)) if k not in new["id"]]
        for k in fresh[: rng.randint(1, 3)]:
            new["id"].append(k)
            for j, n in enumerate(names):
                new[n].append(random_cell(rng, kinds[j], p_missing))
    if ncol > 1 and rng.random() < 0.2:
        del new[names[rng.randrange(ncol)]]
    if rng.random() < 0.2 and len(new) < max_cols:
        new["extra"] = [random_cell(rng, "mixed", p_missing) for _ in new["id"]]
    # shuffle rows of new
    order = list(range(len(new["id"])))
    rng.shuffle(order)
    new = {n: [v[i] for i in order] for n, v in new.items()}
    # and columns, keeping the key somewhere
    cols = list(new)
    rng.shuffle(cols)
    return Frame.from_dict(old), Frame.from_dict({c: new[c] for c in cols})


# -- hypothesis strategies ---------------------------------------------------

finite_numbers = st.floats(allow_nan=False, allow_infinity=False).map(lambda x: 0.0 if x == 0 else x)
texts = st.one_of(
    st.sampled_from(["", "NA", "TRUE", "FALSE", "12", "1.50", "-3e5", "a,b", 'say "hi"', "line\nbreak"]),
    st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=6),
)
cells = st.one_of(st.none(), finite_numbers, texts, st.booleans())


@st.composite
def frames(draw, max_rows: int = 8, max_cols: int = 5, kinds=("number", "text", "bool", "mixed")):
    ncol = draw(st.integers(1, max_cols))
    nrow = draw(st.integers(0, max_rows))
    name_chars = st.characters(blacklist_categories=("Cs",), blacklist_characters="\ufeff")
    names = draw(st.lists(st.text(name_chars, min_size=1, max_size=5),
                          min_size=ncol, max_size=ncol, unique=True))
    column_kind = draw(st.lists(st.sampled_from(kinds),
                                min_size=ncol, max_size=ncol))
    pick = {
        "number": st.one_of(st.none(), finite_numbers),
        "text": st.one_of(st.none(), texts),
        "bool": st.one_of(st.none(), st.booleans()),
        "mixed": cells,
    }
    cols = tuple(
        Column(n, tuple(draw(st.lists(pick[k], min_size=nrow, max_size=nrow))))
        for n, k in zip(names, column_kind)
    )
    return Frame(cols)


@st.composite
def keyed_frame_pairs(draw, max_rows: int = 10, max_cols: int = 5):
    """Two frames sharing a unique, non-missing text key column ``id``."""
    universe = [f"k{i}" for i in range(max_rows + 4)]
    ncol = draw(st.integers(1, max_cols))
    names = [f"c{j}" for j in range(ncol)]

    def one(col_names):
        keys = draw(st.lists(st.sampled_from(universe), max_size=max_rows, unique=True))
        data = {"id": keys}
        for n in col_names:
            data[n] = draw(st.lists(st.one_of(st.none(), st.integers(-3, 3).map(float), st.sampled_from(["a", "b"])),
                                    min_size=len(keys), max_size=len(keys)))
        return Frame.from_dict(data)

    old_cols = draw(st.lists(st.sampled_from(names), unique=True))
    new_cols = draw(st.lists(st.sampled_from(names), unique=True))
    return one(old_cols), one(new_cols)
