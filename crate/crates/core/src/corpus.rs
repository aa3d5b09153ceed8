//! Programs and interactive-proof problems bundled with the crate.

/// Proper 3-coloring of a five-vertex graph.
pub const COLORING5: &str = include_str!("../examples/coloring5.zkp");
/// 3-coloring of a triangle, small enough for a 101-element field.
pub const TRIANGLE3: &str = include_str!("../examples/triangle3.zkp");
pub const CUBIC: &str = include_str!("../examples/cubic.zkp");
pub const PRODUCT: &str = include_str!("../examples/product.zkp");

/// Every bundled program as `(name, source)`.
pub const PROGRAMS: [(&str, &str); 4] =
    [("coloring5", COLORING5), ("triangle3", TRIANGLE3), ("cubic", CUBIC), ("product", PRODUCT)];

pub const K3: &str = include_str!("../examples/k3.json");
pub const PATH4: &str = include_str!("../examples/path4.json");
pub const PRISM6: &str = include_str!("../examples/prism6.json");
pub const SAT3: &str = include_str!("../examples/sat3.json");
