ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(n: int, label: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(n, []).append((label, bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        ok = all(p[1] for p in parts)
        tr.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}")
        for label, good, detail in parts:
            tr.write_line(f"    [{'ok' if good else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))
