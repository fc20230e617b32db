from __future__ import annotations

import random

import pytest

from solowin.diagnostics import (
    Diagnostic,
    Direction,
    Severity,
    WarningFingerprint,
    apply_ignores,
    cycle_errors,
    fingerprint,
    first_error,
    ignores_from_payload,
    ignores_to_payload,
    parse_line,
    parse_stream,
    render,
)
from solowin.errors import NoErrors

from conftest import gen_diagnostic_list, gen_noise_line, gen_rel_path, gen_message


def diag(seq, severity, file="a.c", line=1, column=None, message="msg"):
    return Diagnostic(seq, severity, file, line, column, message)


class TestParseLine:
    def test_three_field_form(self):
        d = parse_line("src/main.c:10:5: error: expected ';' before 'return'")
        assert d is not None
        assert d.severity is Severity.ERROR
        assert (d.file, d.line, d.column) == ("src/main.c", 10, 5)
        assert d.message == "expected ';' before 'return'"

    def test_two_field_form_column_absent(self):
        d = parse_line("lib/u.c:42: warning: unused variable 'x'")
        assert d is not None
        assert d.severity is Severity.WARNING
        assert d.column is None

    def test_no_location_prefix_is_noise(self):
        assert parse_line("make: *** [all] Error 1") is None

    def test_case_insensitive_severity(self):
        d = parse_line("a.c:1:2: Error: boom")
        assert d is not None and d.severity is Severity.ERROR

    def test_note_parses(self):
        d = parse_line("a.c:3: note: declared here")
        assert d is not None and d.severity is Severity.NOTE

    def test_message_may_contain_colons(self):
        d = parse_line("a.c:1: error: lhs: rhs: tail")
        assert d is not None and d.message == "lhs: rhs: tail"

    def test_unknown_severity_is_noise(self):
        assert parse_line("a.c:1:2: remark: whatever") is None

    def test_escaping_location_is_noise(self):
        assert parse_line("../a.c:1: error: nope") is None


class TestParseStream:
    def test_matching_and_noise(self):
        lines = [
            "gcc -c a.c",
            "a.c:1: error: one",
            "noise",
            "a.c:2: warning: two",
            "b.c:3:1: error: three",
        ]
        diags = parse_stream(lines)
        assert [d.seq for d in diags] == [0, 1, 2]
        assert [d.message for d in diags] == ["one", "two", "three"]

    def test_all_noise(self):
        assert parse_stream(["abc", "def"]) == []

    def test_duplicate_lines_are_distinct_diagnostics(self):
        diags = parse_stream(["a.c:1: error: same", "a.c:1: error: same"])
        assert len(diags) == 2
        assert diags[0].seq == 0 and diags[1].seq == 1


class TestRenderRoundTrip:
    def test_fields_to_line_and_back(self):
        rng = random.Random(5)
        for _ in range(300):
            diags = gen_diagnostic_list(rng, 1)
            rendered = render(diags[0])
            parsed = parse_line(rendered, seq=diags[0].seq)
            assert parsed == diags[0]

    def test_line_to_fields_and_back(self):
        rng = random.Random(6)
        for _ in range(300):
            file, line = gen_rel_path(rng), rng.randint(1, 9999)
            sev = rng.choice(["error", "warning", "note"])
            text = f"{file}:{line}: {sev}: {gen_message(rng)}"
            parsed = parse_line(text)
            assert parsed is not None and render(parsed) == text


class TestFirstError:
    def test_minimal_seq_rule(self):
        diags = [
            diag(0, Severity.WARNING),
            diag(1, Severity.ERROR, message="first"),
            diag(2, Severity.ERROR, message="second"),
        ]
        assert first_error(diags).message == "first"

    def test_only_warnings(self):
        assert first_error([diag(0, Severity.WARNING)]) is None

    def test_empty(self):
        assert first_error([]) is None

    def test_notes_never_selected(self):
        assert first_error([diag(0, Severity.NOTE)]) is None

    def test_matches_brute_force_scan(self):
        rng = random.Random(17)
        for _ in range(200):
            diags = gen_diagnostic_list(rng)
            expected = None
            for d in diags:  # brute-force linear scan oracle
                if d.severity is Severity.ERROR and (
                    expected is None or d.seq < expected.seq
                ):
                    expected = d
            assert first_error(diags) == expected


class TestCycleErrors:
    def errors_at(self, seqs):
        diags = []
        for seq in range(max(seqs) + 1):
            severity = Severity.ERROR if seq in seqs else Severity.WARNING
            diags.append(diag(seq, severity))
        return diags

    def test_next_wraps_around(self):
        diags = self.errors_at({1, 4, 7})
        assert cycle_errors(diags, 7, Direction.NEXT).seq == 1

    def test_previous(self):
        diags = self.errors_at({1, 4, 7})
        assert cycle_errors(diags, 4, Direction.PREVIOUS).seq == 1

    def test_previous_wraps_around(self):
        diags = self.errors_at({1, 4, 7})
        assert cycle_errors(diags, 1, Direction.PREVIOUS).seq == 7

    def test_stale_seq_resets_to_first(self):
        diags = self.errors_at({1, 4, 7})
        assert cycle_errors(diags, 99, Direction.NEXT).seq == 1
        assert cycle_errors(diags, 99, Direction.PREVIOUS).seq == 1

    def test_no_errors_raises(self):
        with pytest.raises(NoErrors):
            cycle_errors([diag(0, Severity.WARNING)], 0, Direction.NEXT)

    def test_next_visits_every_error_once_per_period(self):
        rng = random.Random(23)
        for _ in range(100):
            diags = gen_diagnostic_list(rng)
            errors = [d for d in diags if d.severity is Severity.ERROR]
            if not errors:
                continue
            current = first_error(diags)
            visited = [current.seq]
            for _ in range(len(errors) - 1):
                current = cycle_errors(diags, current.seq, Direction.NEXT)
                visited.append(current.seq)
            assert sorted(visited) == sorted(d.seq for d in errors)
            assert cycle_errors(diags, current.seq, Direction.NEXT).seq == visited[0]


class TestApplyIgnores:
    def test_fingerprint_survives_line_shift(self):
        store = {WarningFingerprint("a.c", "unused variable 'x'")}
        moved = [diag(0, Severity.WARNING, line=14, message="unused variable 'x'")]
        assert apply_ignores(moved, store) == []

    def test_errors_never_ignored(self):
        store = {WarningFingerprint("a.c", "boom")}
        kept = [diag(0, Severity.ERROR, message="boom")]
        assert apply_ignores(kept, store) == kept

    def test_notes_never_removed(self):
        store = {WarningFingerprint("a.c", "fyi")}
        kept = [diag(0, Severity.NOTE, message="fyi")]
        assert apply_ignores(kept, store) == kept

    def test_empty_store_is_identity(self):
        diags = [diag(0, Severity.WARNING), diag(1, Severity.ERROR)]
        assert apply_ignores(diags, frozenset()) == diags

    def test_survivor_order_and_seq_unchanged(self):
        diags = [
            diag(0, Severity.WARNING, message="drop"),
            diag(1, Severity.ERROR),
            diag(2, Severity.WARNING, message="keep"),
        ]
        survivors = apply_ignores(diags, {WarningFingerprint("a.c", "drop")})
        assert [d.seq for d in survivors] == [1, 2]

    def test_idempotent(self):
        rng = random.Random(31)
        for _ in range(100):
            diags = gen_diagnostic_list(rng)
            store = {fingerprint(d) for d in diags if rng.random() < 0.3}
            once = apply_ignores(diags, store)
            assert apply_ignores(once, store) == once

    def test_payload_roundtrip(self):
        store = frozenset(
            {WarningFingerprint("a.c", "m1"), WarningFingerprint("b.c", "m2")}
        )
        assert ignores_from_payload(ignores_to_payload(store)) == store


def test_noise_never_parses():
    rng = random.Random(37)
    for _ in range(200):
        assert parse_line(gen_noise_line(rng)) is None
