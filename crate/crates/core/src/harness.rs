//! Property harness (filled in below).
