"""Suite wiring: a terminal escape hatch for the acceptance gate."""

_capture_manager = None


def pytest_configure(config):
    global _capture_manager
    _capture_manager = config.pluginmanager.getplugin("capturemanager")


def terminal_line(text):
    """Write one line to the real stdout, bypassing capture entirely.

    Under pytest's default fd-level capture even sys.__stdout__ lands in
    the capture buffer, where passing tests silently discard it.  The
    acceptance gate promises one visible line per criterion, so it
    prints through this helper instead.
    """
    if _capture_manager is None:
        print(text, flush=True)
        return
    with _capture_manager.global_and_fixture_disabled():
        print("\n" + text, flush=True)
