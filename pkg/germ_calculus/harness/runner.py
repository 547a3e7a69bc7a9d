"""Scenario batches on a Qt thread pool"""

from __future__ import annotations

import logging
import threading
from typing import Callable, Dict, List, Optional

from PySide6 import QtCore

from germ_calculus.errors import UnknownScenario
from germ_calculus.harness.scenarios import (
    SCENARIOS,
    CheckResult,
    ScenarioReport,
    run_checks,
    scenario_names,
)
from germ_calculus.models.profile import HarnessProfile

logger = logging.getLogger(__name__)

ALL = "all"


class ScenarioTask(QtCore.QObject, QtCore.QRunnable):
    """
    One scenario, runnable in a pool thread.

    Signals:
        logLine(str): Progress message
        finished(str, bool): Scenario name and overall outcome
    """

    logLine = QtCore.Signal(str)
    finished = QtCore.Signal(str, bool)

    def __init__(self, name: str, profile: HarnessProfile) -> None:
        QtCore.QObject.__init__(self)
        QtCore.QRunnable.__init__(self)
        # The runner reads `report` after the pool is done.
        self.setAutoDelete(False)
        self._name = name
        self._profile = profile
        self.report: Optional[ScenarioReport] = None

    @property
    def name(self) -> str:
        return self._name

    def run(self) -> None:
        self.logLine.emit(f"running {self._name}")
        try:
            self.report = run_checks(self._name, self._profile)
        except Exception as e:
            self.report = ScenarioReport(
                self._name, [CheckResult("scenario", False, f"{type(e).__name__}: {e}")], self._profile
            )
        for c in self.report.sorted_checks():
            self.logLine.emit(f"{self._name}/{c.name}: {'pass' if c.passed else 'FAIL'} {c.detail}")
        self.finished.emit(self._name, self.report.passed)


class ScenarioRunner:
    """Runs scenario tasks inline (one worker) or on a QThreadPool"""

    def __init__(self, profile: HarnessProfile, on_log: Optional[Callable[[str], None]] = None) -> None:
        self._profile = profile
        self._on_log = on_log
        self._lock = threading.Lock()
        self.outcomes: Dict[str, bool] = {}

    def _log(self, line: str) -> None:
        with self._lock:
            logger.info(line)
            if self._on_log:
                self._on_log(line)

    def _done(self, name: str, passed: bool) -> None:
        with self._lock:
            self.outcomes[name] = passed

    def run(self, names: List[str]) -> List[ScenarioReport]:
        tasks = [ScenarioTask(name, self._profile) for name in names]
        for task in tasks:
            task.logLine.connect(self._log, QtCore.Qt.DirectConnection)
            task.finished.connect(self._done, QtCore.Qt.DirectConnection)

        if self._profile.workers <= 1 or len(tasks) == 1:
            for task in tasks:
                task.run()
        else:
            pool = QtCore.QThreadPool()
            pool.setMaxThreadCount(self._profile.workers)
            for task in tasks:
                pool.start(task)
            pool.waitForDone()

        return sorted((t.report for t in tasks), key=lambda r: r.scenario)


def expand(name: str) -> List[str]:
    """Scenario names selected by `name` ("all" selects every scenario)"""
    if name == ALL:
        return scenario_names()
    if name not in SCENARIOS:
        raise UnknownScenario(
            f"unknown scenario {name!r}; known: {', '.join(scenario_names() + [ALL])}", "run_scenario"
        )
    return [name]


def run_scenario(
    name: str, profile: HarnessProfile, on_log: Optional[Callable[[str], None]] = None
) -> ScenarioReport:
    """Run a scenario (or all of them) and return one report sorted by check name"""
    reports = ScenarioRunner(profile, on_log).run(expand(name))
    if len(reports) == 1:
        return reports[0]
    checks = [
        CheckResult(f"{r.scenario}/{c.name}", c.passed, c.detail, c.claim)
        for r in reports
        for c in r.checks
    ]
    return ScenarioReport(name, checks, profile)
