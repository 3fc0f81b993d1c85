"""The .saf text format and result serialization.

A .saf file is a sequence of fact statements in the style of common
argumentation-graph interchange formats:

    # comment
    arg(a).  arg(b).
    att(a,b).
    votes(a,3,1).

Statements may share a line; whitespace inside parentheses is ignored;
votes and att may reference arguments declared later in the file, and
an argument without a votes statement gets (0,0). Referencing an id
that is never declared with arg(...) is an error, catching typos in
hand-written files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DuplicateVotes, NegativeCount, SafSyntaxError
from .framework import SocialFramework, VoteRecord, build_framework

_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


@dataclass(frozen=True)
class SafStatement:
    kind: str  # "arg" | "votes" | "att"
    fields: tuple
    line: int


@dataclass(frozen=True)
class SafDocument:
    statements: tuple[SafStatement, ...]

    def __len__(self) -> int:
        return len(self.statements)


def parse_saf(text: str) -> SafDocument:
    """Parse .saf source into an ordered statement list.

    Raises SafSyntaxError with a 1-based line/column, DuplicateVotes when
    one argument gets two votes statements, and NegativeCount for
    negative vote literals. Name resolution is deferred to build time.
    """
    statements = []
    votes_seen: dict[str, int] = {}
    pos = 0
    line = 1
    col = 1
    n = len(text)

    def advance(k: int = 1):
        nonlocal pos, line, col
        for _ in range(k):
            if pos < n and text[pos] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            pos += 1

    def skip_layout():
        while pos < n:
            ch = text[pos]
            if ch in " \t\r\n":
                advance()
            elif ch == "#":
                while pos < n and text[pos] != "\n":
                    advance()
            else:
                return

    def read_token(what: str):
        at = (line, col)
        start = pos
        if pos < n and text[pos] == "-":
            advance()
        while pos < n and text[pos] in _NAME_CHARS:
            advance()
        token = text[start:pos]
        if not token:
            found = repr(text[pos]) if pos < n else "end of input"
            raise SafSyntaxError(f"expected {what}, found {found}", *at)
        return token, at

    def expect(ch: str):
        if pos >= n or text[pos] != ch:
            found = repr(text[pos]) if pos < n else "end of input"
            raise SafSyntaxError(f"expected {ch!r}, found {found}", line, col)
        advance()

    def as_name(token, at):
        if token.startswith("-") or not token:
            raise SafSyntaxError(f"invalid argument id {token!r}", *at)
        return token

    def as_count(token, at):
        try:
            value = int(token)
        except ValueError:
            raise SafSyntaxError(f"expected an integer, found {token!r}", *at) from None
        if value < 0:
            raise NegativeCount(f"negative vote count {value} (line {at[0]})")
        return value

    while True:
        skip_layout()
        if pos >= n:
            break
        keyword, key_at = read_token("a statement keyword")
        if keyword not in ("arg", "votes", "att"):
            raise SafSyntaxError(f"unknown statement kind {keyword!r}", *key_at)
        skip_layout()
        expect("(")
        fields = []
        while True:
            skip_layout()
            fields.append(read_token("a field"))
            skip_layout()
            if pos < n and text[pos] == ",":
                advance()
                continue
            break
        expect(")")
        skip_layout()
        expect(".")

        if keyword == "arg":
            if len(fields) != 1:
                raise SafSyntaxError(f"arg takes 1 field, got {len(fields)}", *key_at)
            payload = (as_name(*fields[0]),)
        elif keyword == "att":
            if len(fields) != 2:
                raise SafSyntaxError(f"att takes 2 fields, got {len(fields)}", *key_at)
            payload = (as_name(*fields[0]), as_name(*fields[1]))
        else:
            if len(fields) != 3:
                raise SafSyntaxError(f"votes takes 3 fields, got {len(fields)}", *key_at)
            name = as_name(*fields[0])
            if name in votes_seen:
                raise DuplicateVotes(
                    f"votes for {name!r} given twice (lines {votes_seen[name]} and {key_at[0]})"
                )
            votes_seen[name] = key_at[0]
            payload = (name, as_count(*fields[1]), as_count(*fields[2]))
        statements.append(SafStatement(keyword, payload, key_at[0]))

    return SafDocument(tuple(statements))


def serialize_saf(doc: SafDocument) -> str:
    """Render one statement per line; inverse of parse_saf on such documents."""
    lines = []
    for st in doc.statements:
        lines.append(f"{st.kind}({','.join(str(f) for f in st.fields)}).")
    return "\n".join(lines) + ("\n" if lines else "")


def document_of(fw: SocialFramework) -> SafDocument:
    """A normalized document (args, then votes, then attacks) for a framework."""
    statements = []
    ln = 1
    for a in fw.arguments:
        statements.append(SafStatement("arg", (a,), ln))
        ln += 1
    for a in fw.arguments:
        rec = fw.votes[a]
        statements.append(SafStatement("votes", (a, rec.pro, rec.con), ln))
        ln += 1
    for src, dst in sorted(fw.attacks):
        statements.append(SafStatement("att", (src, dst), ln))
        ln += 1
    return SafDocument(tuple(statements))


def framework_of(doc: SafDocument) -> SocialFramework:
    """Resolve a parsed document into a validated framework."""
    arguments = []
    attacks = []
    votes: dict[str, VoteRecord] = {}
    for st in doc.statements:
        if st.kind == "arg":
            arguments.append(st.fields[0])
        elif st.kind == "att":
            attacks.append((st.fields[0], st.fields[1]))
        else:
            name, pro, con = st.fields
            if name in votes:
                raise DuplicateVotes(f"votes for {name!r} given twice")
            votes[name] = VoteRecord(pro, con)
    return build_framework(arguments, attacks, votes)


@dataclass(frozen=True)
class ResultEnvelope:
    """Uniform wrapper for everything the command line can print."""

    framework: dict
    semantics: dict
    payload_kind: str
    payload: dict
    metadata: dict


def _fmt(x: float) -> str:
    return f"{x:.5f}"


def _grid(header, rows) -> list[str]:
    widths = [
        max(len(header[c]), *(len(r[c]) for r in rows)) if rows else len(header[c])
        for c in range(len(header))
    ]
    def render(cells):
        return "  ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip()
    out = [render(header), render(["-" * w for w in widths])]
    out.extend(render(r) for r in rows)
    return out


def _table_models(payload) -> list[str]:
    names = payload["arguments"]
    header = ["model"] + list(names) + ["ranking"]
    rows = []
    for i, entry in enumerate(payload["models"], start=1):
        rows.append(
            [str(i)]
            + [_fmt(entry["values"][a]) for a in names]
            + [entry["ranking"]]
        )
    return _grid(header, rows)


def _table_model(payload) -> list[str]:
    names = sorted(payload["values"])
    lines = _grid(["argument", "value"], [[a, _fmt(payload["values"][a])] for a in names])
    lines.append("")
    lines.append(f"residual: {payload['residual']:.3e}  iterations: {payload['iterations']}")
    lines.append(f"ranking: {payload['ranking']}")
    return lines


def _table_scores(payload) -> list[str]:
    names = sorted(payload["scores"])
    rows = [[a, _fmt(payload["model"][a]), _fmt(payload["scores"][a])] for a in names]
    lines = _grid(["argument", "normalized", "score"], rows)
    lines.append("")
    lines.append(f"ranking: {payload['ranking']}")
    return lines


def _table_certificate(payload) -> list[str]:
    rows = [[a, f"{m:+.5f}"] for a, m in payload["margins"].items()]
    lines = _grid(["argument", "margin"], rows)
    lines.append("")
    verdict = "holds: unique model guaranteed" if payload["holds"] else "does not hold"
    lines.append(f"certificate {verdict}")
    if payload["witness"] is not None:
        lines.append(f"witness: {payload['witness']}")
    return lines


def _table_rankings(payload) -> list[str]:
    rows = [[str(i), entry["ranking"]] for i, entry in enumerate(payload["rankings"], 1)]
    return _grid(["model", "ranking"], rows)


def _table_three_clique(payload) -> list[str]:
    rows = [
        [f"x{i+1}", _fmt(s), f"{v:.12f}"]
        for i, (s, v) in enumerate(zip(payload["supports"], payload["solution"]))
    ]
    lines = _grid(["coordinate", "support", "value"], rows)
    lines.append("")
    lines.append(f"residual: {payload['residual']:.3e}")
    return lines


def _table_independence(payload) -> list[str]:
    a, b = payload["focus"]
    rows = [
        ["before", f"{payload['before']['values'][0]:.6f}", f"{payload['before']['values'][1]:.6f}", payload["before"]["ranking"]],
        ["after", f"{payload['after']['values'][0]:.6f}", f"{payload['after']['values'][1]:.6f}", payload["after"]["ranking"]],
    ]
    lines = _grid(["stage", a, b, "ranking"], rows)
    lines.append("")
    lines.append(
        f"padding: {payload['padding']} isolated arguments, mode: {payload['mode']}"
    )
    lines.append(f"ordinal independence violated: {payload['violated']}")
    return lines


def _table_axioms(payload) -> list[str]:
    rows = [
        [c["name"], c["status"], c["witness"] or ""]
        for c in payload["checks"]
    ]
    lines = _grid(["axiom", "status", "witness"], rows)
    lines.append("")
    lines.append("all checkable axioms pass" if payload["passed"] else "AXIOM FAILURE")
    return lines


_TABLES = {
    "models": _table_models,
    "model": _table_model,
    "scores": _table_scores,
    "certificate": _table_certificate,
    "rankings": _table_rankings,
    "three_clique": _table_three_clique,
    "independence": _table_independence,
    "axioms": _table_axioms,
}


def emit_result(env: ResultEnvelope, format: str = "table") -> str:
    """Render an envelope as a JSON document or an aligned ASCII table."""
    if format == "json":
        doc = {
            "framework": env.framework,
            "semantics": env.semantics,
            "kind": env.payload_kind,
            "payload": env.payload,
            "metadata": env.metadata,
        }
        return json.dumps(doc, indent=2, allow_nan=False)
    if format != "table":
        raise ValueError(f"unknown output format {format!r}")
    try:
        body = _TABLES[env.payload_kind](env.payload)
    except KeyError:
        raise ValueError(f"no table layout for payload kind {env.payload_kind!r}") from None
    head = []
    if env.framework:
        head.append(
            f"framework: {env.framework.get('arguments', '?')} arguments, "
            f"{env.framework.get('attacks', '?')} attacks"
        )
    if env.metadata:
        head.append("  ".join(f"{k}: {v}" for k, v in env.metadata.items()))
    if head:
        head.append("")
    return "\n".join(head + body)
