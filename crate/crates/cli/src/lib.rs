//! Library surface of the `wdist` binary: the typed output documents and
//! their text/CSV/JSON renderers, exposed so integration tests can state
//! the JSON round-trip property against the same types the binary emits.

pub mod render;
