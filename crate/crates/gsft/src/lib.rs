//! Subshifts of finite type on finitely generated groups.
//!
//! The crate bundles exact group models with word-norm balls ([`group`]),
//! tilesets given by forbidden patterns with recoding to one-step form
//! ([`sft`]), emptiness deciders and the exhaustive ball search
//! ([`deciders`]), dimension-lowering reductions along subgroup rays
//! ([`reduction`]), and a coarse-geometry probe measuring how ball
//! boundaries grow ([`ends`]). [`formats`] fixes the JSON documents the
//! command-line tool reads and writes, and [`render`] draws configurations
//! as SVG.

pub mod deciders;
pub mod ends;
pub mod formats;
pub mod group;
pub mod reduction;
pub mod render;
mod search_core;
pub mod sft;

pub use deciders::{EmptinessVerdict, SearchOutcome};
pub use group::{BallGraph, CosetEmbedding, GroupElement, GroupError, GroupModel};
pub use sft::{Alphabet, PartialConfiguration, Pattern, SftDefinition, SftError, SymbolId};
