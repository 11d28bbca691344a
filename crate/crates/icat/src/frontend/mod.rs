//! Textual fixture format, CLI command surface, report emission, DOT export.
