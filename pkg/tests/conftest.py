from __future__ import annotations

from hypothesis import HealthCheck, settings

from packmatch.bitpack import pack_text

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def enc(s: str) -> tuple[int, ...]:
    """Letters to codes: 'a' -> 0, 'b' -> 1, ..."""
    return tuple(ord(c) - ord("a") for c in s)


def packed(s: str, sigma: int = 4):
    return pack_text(enc(s), sigma)


ACCEPTANCE: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    """Log one acceptance verdict; shown again in the terminal summary."""
    line = f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
