//! Auxiliary limit verification (placeholder).
