//! Combinatorial configurations `(p_γ l_π)`: validation, enumeration up to
//! isomorphism, three-colorings, pairing permutations, and exact sketches of
//! non-uniqueness factors.

pub mod coloring;
pub mod enumerate;
pub mod search144;
pub mod sketch;
pub mod svg;
pub mod table;

pub use coloring::{count_colorings, extract_permutations, find_coloring, Coloring, LineColor};
pub use enumerate::{enumerate_n3, MAX_N3};
pub use search144::{search_144, DepthStat, Search144Report};
pub use sketch::{sketch_from_q, IncidenceSketch, SketchLine, TriplePoint};
pub use svg::{choose_chart, emit_svg, render_svg, Chart};
pub use table::{canonical_form, canonical_labeling, isomorphic, ConfigurationTable, Violation};
