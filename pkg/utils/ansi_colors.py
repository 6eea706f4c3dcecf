# ansi_colors.py: Solarized Dark palette for terminal reports

import os
import sys

# Reset
RESET = "\u001b[0m"

# ───────────────────────────────────────────────
# 🎨 Foreground Colors
# ───────────────────────────────────────────────
BASE0 = "\u001b[0;34m"   # #839496 - blue-gray

# ───────────────────────────────────────────────
# 🌈 Accent Colors (Foreground)
# ───────────────────────────────────────────────
SOL_YELLOW = "\u001b[1;33m"  # #b58900
SOL_RED    = "\u001b[1;31m"  # #dc322f
SOL_CYAN   = "\u001b[1;36m"  # #2aa198
SOL_GREEN  = "\u001b[1;32m"  # #859900

# ───────────────────────────────────────────────
# 🧪 Report Roles
# ───────────────────────────────────────────────
TITLE_COLOR  = SOL_CYAN
HEADER_COLOR = SOL_YELLOW
PASS_COLOR   = SOL_GREEN
FAIL_COLOR   = SOL_RED
MUTED_COLOR  = BASE0


def color_enabled(stream=None) -> bool:
    """Colors only on a TTY, and never when NO_COLOR is set."""
    stream = stream or sys.stdout
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def paint(text: str, color: str, enabled: bool = True) -> str:
    return f"{color}{text}{RESET}" if enabled else text
