//! SVG emission (stub).
