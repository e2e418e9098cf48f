//! Analysis report (stub).
