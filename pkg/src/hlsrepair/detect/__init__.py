"""HLS-compatibility checker: eight detector classes plus syntax checking."""
from .check import check, external_check
from .detectors import (Context, detect_boolean, detect_dynamic, detect_exception_dynamic,
                        detect_exception_static, detect_incomplete, detect_pointer,
                        detect_recursion, detect_unsupported, detect_virtual, detect_bitwidth, is_array_bound)
from .diagnostics import (TYPE_CLASSES, CompileReport, Diagnostic, ErrorClass, Severity)

__all__ = [
    "check", "external_check", "Context", "detect_boolean", "detect_dynamic",
    "detect_exception_dynamic", "detect_exception_static", "detect_incomplete", "detect_pointer",
    "detect_recursion", "detect_unsupported", "detect_virtual", "detect_bitwidth", "is_array_bound",
    "TYPE_CLASSES", "CompileReport", "Diagnostic", "ErrorClass", "Severity",
]
