"""Exception hierarchy shared across the pipeline."""

from __future__ import annotations


class SpatialbookError(Exception):
    """Base class for all errors raised by this package."""


# --- WAV I/O ---------------------------------------------------------------

class WavError(SpatialbookError):
    pass


class WavHeaderError(WavError):
    """The RIFF/fmt header is malformed."""


class WavCodecError(WavError):
    """The file decodes, but the codec/layout is unsupported."""


class WavDataError(WavError):
    """The data chunk is truncated or inconsistent with the header."""


class WavClipError(WavError):
    """A sample outside [-1, 1] was written in a PCM format without limiting."""


# --- script parsing --------------------------------------------------------

class ScriptParseError(SpatialbookError):
    """Raised when a script fails to parse; carries all collected diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(f"{len(self.diagnostics)} script error(s): {lines}")


# --- external adapters -----------------------------------------------------

class AdapterError(SpatialbookError):
    pass


class AdapterConfigError(AdapterError):
    """Adapter invoked without a configured command."""


class AdapterExitError(AdapterError):
    """Adapter process exited nonzero."""


class AdapterSchemaError(AdapterError):
    """Adapter response does not match the documented JSON schema."""


class AdapterTimestampError(AdapterError):
    """Adapter timestamps violate transcript invariants."""


# --- pipeline --------------------------------------------------------------

class PipelineError(SpatialbookError):
    """A pipeline stage failed; `stage` attributes the failure."""

    def __init__(self, stage: str, detail: str):
        self.stage = stage
        self.detail = detail
        super().__init__(f"[{stage}] {detail}")
