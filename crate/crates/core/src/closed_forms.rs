//! Explicit closed forms (placeholder).
