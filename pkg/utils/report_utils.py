# utils/report_utils.py

from typing import Iterable, List, Sequence

from oracle.acceptance import CheckResult
from sampling.rederive import RederivedTerm
from utils.ansi_colors import FAIL_COLOR, HEADER_COLOR, MUTED_COLOR, PASS_COLOR, TITLE_COLOR, paint


def format_check_report(results: Sequence[CheckResult], color: bool = False) -> str:
    """Render acceptance results grouped by check, one line per comparison.

    Failed comparisons show measured against expected so the mismatch can be
    read without rerunning.
    """
    lines: List[str] = [paint("🧪 Acceptance report", TITLE_COLOR, color)]
    current = None
    for result in results:
        if result.check != current:
            current = result.check
            lines.append(paint(f"\n## {current} ({result.seconds:.2f}s)", HEADER_COLOR, color))
        mark = paint("✅", PASS_COLOR, color) if result.passed else paint("❌", FAIL_COLOR, color)
        detail = f"measured={result.measured:.6g} expected={result.expected:.6g} [{result.tolerance}]"
        lines.append(f"{mark} {result.name}: {paint(detail, MUTED_COLOR, color)}")

    failed = sum(not r.passed for r in results)
    summary = f"\n{len(results) - failed}/{len(results)} comparisons passed"
    lines.append(paint(summary, PASS_COLOR if failed == 0 else FAIL_COLOR, color))
    return "\n".join(lines)


def format_key_values(title: str, rows: Iterable[Sequence], color: bool = False) -> str:
    lines = [paint(title, TITLE_COLOR, color)]
    for key, value in rows:
        lines.append(f"• {key}: {value}")
    return "\n".join(lines)


def format_rederive_report(terms: Sequence[RederivedTerm], color: bool = False) -> str:
    lines = [paint("🔁 Relay constants, re-derived", TITLE_COLOR, color)]
    for term in terms:
        lines.append(paint(f"\n## {term.name}", HEADER_COLOR, color))
        lines.append(f"• location: ({term.location[0]:.6f}, {term.location[1]:.6f})")
        if term.stored_location is not None:
            lines.append(f"• stored location: ({term.stored_location[0]:.4f}, {term.stored_location[1]:.4f})")
        lines.append(f"• exponent: {term.exponent_sum:.6f} vs stored {term.stored_exponent_sum:.4f} "
                     f"({term.exponent_drift:+.2%})")
        lines.append(f"• weight: {term.weight:.6f} vs stored {term.stored_weight:.6f} "
                     f"({term.weight_drift:+.2%})")
    return "\n".join(lines)
