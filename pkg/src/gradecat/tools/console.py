"""
Human-readable terminal output.
"""
from colorama import Fore, Style, init

init()

STATUS_COLORS = {
    "ok": Fore.GREEN,
    "invalid": Fore.RED,
    "error": Fore.RED,
    "unsupported": Fore.YELLOW,
}

RULE = '=' * 60


def banner(title: str):
    print(f"\n{RULE}")
    print(title)
    print(RULE)


def status_line(status: str, message: str = ""):
    """Colored status followed by an optional message."""
    color = STATUS_COLORS.get(status, "")
    tail = f" - {message}" if message else ""
    print(f"{color}{status.upper()}{Style.RESET_ALL}{tail}")


def mark(passed: bool, name: str, detail: str = ""):
    """✓/✗ line for a single check."""
    symbol = f"{Fore.GREEN}✓" if passed else f"{Fore.RED}✗"
    tail = f": {detail}" if detail else ""
    print(f"{symbol}{Style.RESET_ALL} {name}{tail}")


def warn(message: str):
    print(f"{Fore.YELLOW}WARNING: {message}{Style.RESET_ALL}")


def info(message: str, verbose: bool):
    if verbose:
        print(message)
