"""Task interface shared by the CLI commands and the sweep workers."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Generic, TypeVar

InputT = TypeVar("InputT")
OutputT = TypeVar("OutputT")


@dataclass
class TaskResult(Generic[OutputT]):
    success: bool
    output: OutputT | None
    error: str | None = None


class BaseTask(ABC, Generic[InputT, OutputT]):
    """One unit of work; failures come back as a TaskResult, also from pool workers."""

    def __init__(self, name: str | None = None):
        self.name = name or self.__class__.__name__
        self.logger = logging.getLogger(f"tautcheck.tasks.{self.name}")

    @abstractmethod
    def _process(self, input_data: InputT) -> OutputT: ...

    def process(self, input_data: InputT) -> TaskResult[OutputT]:
        self.logger.debug(f"Starting {self.name}")
        try:
            output = self._process(input_data)
        except Exception as e:
            # tracebacks only at DEBUG; a failed shard is reported by the orchestrator
            self.logger.error(f"{self.name} failed: {e}", exc_info=self.logger.isEnabledFor(logging.DEBUG))
            return TaskResult(success=False, output=None, error=str(e))
        self.logger.debug(f"{self.name} completed")
        return TaskResult(success=True, output=output)
