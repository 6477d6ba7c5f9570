//! JSON interchange documents and SVG figures.

pub mod document;
pub mod svg;

pub use document::{Metadata, PolyhedronDocument, TileEntry, TileEntryKind, TilingDocument};
pub use svg::{render_svg, PoleChoice, RenderOptions};
