"""Load a pipe-delimited LDBC CSV dump into an immutable :class:`SocialNetwork`."""

from __future__ import annotations

import csv
import datetime as dt
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Container, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DanglingReference, DuplicateColumn, DuplicateId, IoFailure, MissingColumn, RaggedRow
from .graph import BirthdayIndex, Csr, DenseIdMap, PlaceHierarchy, build_csr

log = logging.getLogger(__name__)

PERSON = "person.csv"
KNOWS = "person_knows_person.csv"
COMMENT_CREATOR = "comment_hasCreator_person.csv"
COMMENT_REPLY = "comment_replyOf_comment.csv"
TAG = "tag.csv"
INTEREST = "person_hasInterest_tag.csv"
FORUM_TAG = "forum_hasTag_tag.csv"
FORUM_MEMBER = "forum_hasMember_person.csv"
PLACE = "place.csv"
PLACE_PARENT = "place_isPartOf_place.csv"
PERSON_PLACE = "person_isLocatedIn_place.csv"
ORG_PLACE = "organisation_isLocatedIn_place.csv"
STUDY_AT = "person_studyAt_organisation.csv"
WORK_AT = "person_workAt_organisation.csv"


@dataclass(frozen=True)
class CsvTable:
    column_names: list[str]
    rows: list[tuple[str, ...]]

    def __len__(self) -> int:
        return len(self.rows)


def _open_rows(path: Path):
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return fh, csv.reader(fh, delimiter="|", quoting=csv.QUOTE_NONE)


def parse_csv(path: str | Path, required_columns: Sequence[str]) -> CsvTable:
    """Read ``path`` and project every row onto ``required_columns``.

    Columns are located by header name; extra columns are ignored. Values
    stay raw strings.
    """
    path = Path(path)
    fh, reader = _open_rows(path)
    with fh:
        try:
            header = next(reader)
        except StopIteration:
            raise IoFailure(f"{path} is empty (no header line)") from None
        positions = []
        for name in required_columns:
            hits = [i for i, h in enumerate(header) if h == name]
            if not hits:
                raise MissingColumn(name, str(path))
            if len(hits) > 1:
                raise DuplicateColumn(name, str(path))
            positions.append(hits[0])
        width = len(header)
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != width:
                raise RaggedRow(reader.line_num, str(path))
            rows.append(tuple(row[i] for i in positions))
    return CsvTable(list(required_columns), rows)


def parse_edge_csv(path: str | Path) -> CsvTable:
    """Read the first two columns of an edge file positionally.

    Datagen edge files label both endpoints of same-typed relations with the
    same header (``Person.id|Person.id``), so they cannot be addressed by name.
    """
    path = Path(path)
    fh, reader = _open_rows(path)
    with fh:
        try:
            header = next(reader)
        except StopIteration:
            raise IoFailure(f"{path} is empty (no header line)") from None
        if len(header) < 2:
            raise MissingColumn("<second endpoint>", str(path))
        width = len(header)
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != width:
                raise RaggedRow(reader.line_num, str(path))
            rows.append((row[0], row[1]))
    return CsvTable(header[:2], rows)


def parse_date(text: str) -> dt.date:
    return dt.date.fromisoformat(text.strip()[:10])


class ReplyCountEdge(NamedTuple):
    src: int
    dst: int
    count: int


def compute_reply_counts(
    comment_creator: Iterable[tuple[int, int]],
    comment_reply_of: Iterable[tuple[int, int]],
    knows: Container[tuple[int, int]],
    *,
    reply_file: str = COMMENT_REPLY,
) -> list[ReplyCountEdge]:
    """Count, per ordered knows pair (a, b), the comments by a replying to comments by b.

    ``comment_creator`` maps comment ids to dense person indices;
    ``comment_reply_of`` holds ``(comment, parent comment)`` pairs. Pairs
    outside ``knows`` are dropped, as are zero counts.
    """
    creator = dict(comment_creator)
    pairs: Counter[tuple[int, int]] = Counter()
    for i, (c, parent) in enumerate(comment_reply_of):
        a = creator.get(c)
        if a is None:
            raise DanglingReference(reply_file, i + 2, c)
        b = creator.get(parent)
        if b is None:
            raise DanglingReference(reply_file, i + 2, parent)
        pairs[a, b] += 1
    return sorted(ReplyCountEdge(a, b, n) for (a, b), n in pairs.items() if (a, b) in knows)


@dataclass
class RawData:
    """Parsed rows of every input file, with ids already converted to ints."""

    persons: list[tuple[int, dt.date]] = field(default_factory=list)
    knows: list[tuple[int, int]] = field(default_factory=list)
    comment_creator: list[tuple[int, int]] = field(default_factory=list)
    comment_reply_of: list[tuple[int, int]] = field(default_factory=list)
    tags: list[tuple[int, str]] = field(default_factory=list)
    interests: list[tuple[int, int]] = field(default_factory=list)
    forum_tags: list[tuple[int, int]] = field(default_factory=list)
    forum_members: list[tuple[int, int]] = field(default_factory=list)
    places: list[tuple[int, str, str]] = field(default_factory=list)
    place_parent: list[tuple[int, int]] = field(default_factory=list)
    person_place: list[tuple[int, int]] = field(default_factory=list)
    org_place: list[tuple[int, int]] = field(default_factory=list)
    study_at: list[tuple[int, int]] = field(default_factory=list)
    work_at: list[tuple[int, int]] = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class PersonTable:
    ids: DenseIdMap
    birthdays: np.ndarray  # date ordinals

    def __len__(self) -> int:
        return len(self.ids)

    def birthday(self, p: int) -> dt.date:
        return dt.date.fromordinal(int(self.birthdays[p]))


@dataclass(frozen=True, eq=False)
class TagTable:
    ids: DenseIdMap
    names: list[str]
    by_name: dict[str, list[int]]

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True, eq=False)
class PlaceTable:
    ids: DenseIdMap
    names: list[str]
    kinds: list[str]
    parent: np.ndarray  # dense parent index, -1 for roots
    hierarchy: PlaceHierarchy

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True, eq=False)
class SocialNetwork:
    persons: PersonTable
    tags: TagTable
    places: PlaceTable
    organisations: DenseIdMap
    org_place: np.ndarray
    forums: DenseIdMap
    knows: Csr
    birthday_index: BirthdayIndex
    tag_interested: list[np.ndarray]
    person_interests: list[int]  # bitset over dense tag indices
    tag_forums: list[list[int]]
    forum_members: list[np.ndarray]
    person_place_label: np.ndarray  # pre-order label of the person's location, -1 if none
    person_org_place_label: tuple[np.ndarray, np.ndarray]  # (person, label) per study/work edge
    reply_edge_total: int = 0

    @property
    def person_count(self) -> int:
        return len(self.persons)

    def person_index(self, sparse: int) -> int | None:
        return self.persons.ids.get(sparse)

    def person_id(self, dense: int) -> int:
        return self.persons.ids.sparse(dense)


def _lookup(ids: DenseIdMap, sparse: int, file: str, line: int) -> int:
    d = ids.get(sparse)
    if d is None:
        raise DanglingReference(file, line, sparse)
    return d


def _define(rows: Iterable[int], file: str) -> DenseIdMap:
    ids = DenseIdMap()
    for i, sparse in enumerate(rows):
        if sparse in ids:
            raise DuplicateId(file, i + 2, sparse)
        ids.intern(sparse)
    return ids


def assemble(raw: RawData) -> SocialNetwork:
    """Relabel all entities densely and build the indexes."""
    person_ids = _define((p for p, _ in raw.persons), PERSON)
    n = len(person_ids)
    birthdays = np.array([d.toordinal() for _, d in raw.persons], dtype=np.int64)

    tag_ids = _define((t for t, _ in raw.tags), TAG)
    tag_names = [name for _, name in raw.tags]
    by_name: dict[str, list[int]] = {}
    for t, name in enumerate(tag_names):
        by_name.setdefault(name, []).append(t)

    place_ids = _define((p for p, _, _ in raw.places), PLACE)
    place_names = [name for _, name, _ in raw.places]
    place_kinds = [kind for _, _, kind in raw.places]
    parent = np.full(len(place_ids), -1, dtype=np.int64)
    for i, (child, par) in enumerate(raw.place_parent):
        c = _lookup(place_ids, child, PLACE_PARENT, i + 2)
        parent[c] = _lookup(place_ids, par, PLACE_PARENT, i + 2)
    hierarchy = PlaceHierarchy.build(parent.tolist(), place_names)

    knows_pairs: set[tuple[int, int]] = set()
    for i, (a, b) in enumerate(raw.knows):
        da = _lookup(person_ids, a, KNOWS, i + 2)
        db = _lookup(person_ids, b, KNOWS, i + 2)
        if da != db:
            knows_pairs.add((da, db))
            knows_pairs.add((db, da))

    creator = []
    for i, (c, p) in enumerate(raw.comment_creator):
        creator.append((c, _lookup(person_ids, p, COMMENT_CREATOR, i + 2)))
    replies = compute_reply_counts(creator, raw.comment_reply_of, knows_pairs)
    counts = {(e.src, e.dst): e.count for e in replies}
    edges = sorted(knows_pairs)
    knows = build_csr(n, np.array(edges, dtype=np.int64).reshape(-1, 2),
                      [counts.get(e, 0) for e in edges])

    interested: list[list[int]] = [[] for _ in range(len(tag_ids))]
    person_interests = [0] * n
    for i, (p, t) in enumerate(raw.interests):
        dp = _lookup(person_ids, p, INTEREST, i + 2)
        dt_ = _lookup(tag_ids, t, INTEREST, i + 2)
        if not person_interests[dp] >> dt_ & 1:
            interested[dt_].append(dp)
            person_interests[dp] |= 1 << dt_

    forum_ids = DenseIdMap()
    for f, _ in raw.forum_tags:
        forum_ids.intern(f)
    for f, _ in raw.forum_members:
        forum_ids.intern(f)
    tag_forums: list[list[int]] = [[] for _ in range(len(tag_ids))]
    for i, (f, t) in enumerate(raw.forum_tags):
        tag_forums[_lookup(tag_ids, t, FORUM_TAG, i + 2)].append(forum_ids.dense(f))
    members: list[list[int]] = [[] for _ in range(len(forum_ids))]
    for i, (f, p) in enumerate(raw.forum_members):
        members[forum_ids.dense(f)].append(_lookup(person_ids, p, FORUM_MEMBER, i + 2))

    person_label = np.full(n, -1, dtype=np.int64)
    for i, (p, pl) in enumerate(raw.person_place):
        dp = _lookup(person_ids, p, PERSON_PLACE, i + 2)
        person_label[dp] = hierarchy.low[_lookup(place_ids, pl, PERSON_PLACE, i + 2)]

    org_ids = DenseIdMap()
    for o, _ in raw.org_place:
        org_ids.intern(o)
    for _, o in raw.study_at:
        org_ids.intern(o)
    for _, o in raw.work_at:
        org_ids.intern(o)
    org_place = np.full(len(org_ids), -1, dtype=np.int64)
    for i, (o, pl) in enumerate(raw.org_place):
        org_place[org_ids.dense(o)] = _lookup(place_ids, pl, ORG_PLACE, i + 2)
    org_label = np.where(org_place >= 0, hierarchy.low[np.maximum(org_place, 0)], -1) \
        if len(org_place) else org_place
    aff_persons, aff_labels = [], []
    for file, rows in ((STUDY_AT, raw.study_at), (WORK_AT, raw.work_at)):
        for i, (p, o) in enumerate(rows):
            aff_persons.append(_lookup(person_ids, p, file, i + 2))
            aff_labels.append(int(org_label[org_ids.dense(o)]))

    return SocialNetwork(
        persons=PersonTable(person_ids, birthdays),
        tags=TagTable(tag_ids, tag_names, by_name),
        places=PlaceTable(place_ids, place_names, place_kinds, parent, hierarchy),
        organisations=org_ids,
        org_place=org_place,
        forums=forum_ids,
        knows=knows,
        birthday_index=BirthdayIndex.build(birthdays),
        tag_interested=[np.array(ps, dtype=np.int64) for ps in interested],
        person_interests=person_interests,
        tag_forums=tag_forums,
        forum_members=[np.array(ps, dtype=np.int64) for ps in members],
        person_place_label=person_label,
        person_org_place_label=(np.array(aff_persons, dtype=np.int64),
                                np.array(aff_labels, dtype=np.int64)),
        reply_edge_total=len(raw.comment_reply_of),
    )


def _ints(table: CsvTable) -> list[tuple[int, int]]:
    return [(int(a), int(b)) for a, b in table.rows]


def read_directory(directory: str | Path) -> RawData:
    d = Path(directory)
    if not d.is_dir():
        raise IoFailure(f"{d} is not a directory")
    persons = parse_csv(d / PERSON, ["id", "birthday"])
    tags = parse_csv(d / TAG, ["id", "name"])
    places = parse_csv(d / PLACE, ["id", "name", "type"])
    return RawData(
        persons=[(int(i), parse_date(b)) for i, b in persons.rows],
        knows=_ints(parse_edge_csv(d / KNOWS)),
        comment_creator=_ints(parse_edge_csv(d / COMMENT_CREATOR)),
        comment_reply_of=_ints(parse_edge_csv(d / COMMENT_REPLY)),
        tags=[(int(i), name) for i, name in tags.rows],
        interests=_ints(parse_edge_csv(d / INTEREST)),
        forum_tags=_ints(parse_edge_csv(d / FORUM_TAG)),
        forum_members=_ints(parse_edge_csv(d / FORUM_MEMBER)),
        places=[(int(i), name, kind) for i, name, kind in places.rows],
        place_parent=_ints(parse_edge_csv(d / PLACE_PARENT)),
        person_place=_ints(parse_edge_csv(d / PERSON_PLACE)),
        org_place=_ints(parse_edge_csv(d / ORG_PLACE)),
        study_at=_ints(parse_edge_csv(d / STUDY_AT)),
        work_at=_ints(parse_edge_csv(d / WORK_AT)),
    )


def load_directory(directory: str | Path) -> SocialNetwork:
    raw = read_directory(directory)
    net = assemble(raw)
    log.info("loaded %d persons, %d knows edges, %d tags from %s",
             net.person_count, net.knows.edge_count // 2, len(net.tags), directory)
    return net


_HEADERS = {
    PERSON: "id|firstName|lastName|gender|birthday|creationDate|locationIP|browserUsed",
    KNOWS: "Person.id|Person.id",
    COMMENT_CREATOR: "Comment.id|Person.id",
    COMMENT_REPLY: "Comment.id|Comment.id",
    TAG: "id|name|url",
    INTEREST: "Person.id|Tag.id",
    FORUM_TAG: "Forum.id|Tag.id",
    FORUM_MEMBER: "Forum.id|Person.id|joinDate",
    PLACE: "id|name|url|type",
    PLACE_PARENT: "Place.id|Place.id",
    PERSON_PLACE: "Person.id|Place.id",
    ORG_PLACE: "Organisation.id|Place.id",
    STUDY_AT: "Person.id|Organisation.id|classYear",
    WORK_AT: "Person.id|Organisation.id|workFrom",
}


def write_directory(raw: RawData, directory: str | Path) -> Path:
    """Write ``raw`` as a Datagen-shaped CSV dump (unused columns filled with placeholders)."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)

    def emit(name: str, rows: Iterable[Sequence[object]]) -> None:
        width = _HEADERS[name].count("|") + 1
        with open(d / name, "w", encoding="utf-8", newline="") as fh:
            fh.write(_HEADERS[name] + "\n")
            for row in rows:
                cells = [str(c) for c in row]
                cells += ["x"] * (width - len(cells))
                fh.write("|".join(cells) + "\n")

    emit(PERSON, ((p, "F", "L", "male", b.isoformat()) for p, b in raw.persons))
    emit(KNOWS, raw.knows)
    emit(COMMENT_CREATOR, raw.comment_creator)
    emit(COMMENT_REPLY, raw.comment_reply_of)
    emit(TAG, raw.tags)
    emit(INTEREST, raw.interests)
    emit(FORUM_TAG, raw.forum_tags)
    emit(FORUM_MEMBER, raw.forum_members)
    emit(PLACE, ((i, name, f"http://dbpedia.org/resource/{name}", kind) for i, name, kind in raw.places))
    emit(PLACE_PARENT, raw.place_parent)
    emit(PERSON_PLACE, raw.person_place)
    emit(ORG_PLACE, raw.org_place)
    emit(STUDY_AT, raw.study_at)
    emit(WORK_AT, raw.work_at)
    return d
