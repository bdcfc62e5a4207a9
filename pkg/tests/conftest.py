import pytest

from pyrsts import cache

# criterion number -> list of (label, passed, detail)
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, label: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((label, passed, detail))
    print(f"criterion {criterion} [{label}]: {'PASS' if passed else 'FAIL'} {detail}".rstrip())


@pytest.fixture(autouse=True)
def _no_disk_cache():
    # keep the suite independent of whatever lives in ~/.cache
    cache.set_store(None)
    yield
    cache.set_store(None)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        ok = all(p for _, p, _ in parts)
        labels = "; ".join(f"{lab}={'ok' if p else 'FAILED'}" for lab, p, _ in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({labels})")
        for lab, p, detail in parts:
            if not p and detail:
                terminalreporter.write_line(f"    {lab}: {detail}")
