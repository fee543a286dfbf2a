//! Built-in quiver specs.

/// A vertex `a` joined to each `b[n]` by a two-cycle, with the composite
/// `p[n] = x[n] . y[n]`.
pub const EX1: &str = "\
coalgebra ex1
field rational
param N = 3
mode declared
vertex a
vertex b[n], n=1..N
arrow x[n]: a -> b[n], n=1..N
arrow y[n]: b[n] -> a, n=1..N
path p[n] = x[n] . y[n], n=1..N
";

/// `n` parallel arrows from `a` to each `b[n]`; no paths of length two.
pub const EX2: &str = "\
coalgebra ex2
field rational
param N = 3
mode declared
vertex a
vertex b[n], n=1..N
arrow x[n,i]: a -> b[n], n=1..N, i=1..n
";

pub const SINGLE_VERTEX: &str = "\
coalgebra single_vertex
vertex a
";

/// Unboundedly many arrows between one fixed pair of vertices.
pub const UNBOUNDED_PAIR: &str = "\
coalgebra unbounded_pair
param N = 3
vertex a
vertex b
arrow z[i]: a -> b, i=1..N
";

pub fn lookup(name: &str) -> Option<&'static str> {
    match name {
        "ex1" => Some(EX1),
        "ex2" => Some(EX2),
        "single-vertex" => Some(SINGLE_VERTEX),
        "unbounded-pair" => Some(UNBOUNDED_PAIR),
        _ => None,
    }
}

pub const NAMES: [&str; 4] = ["ex1", "ex2", "single-vertex", "unbounded-pair"];
