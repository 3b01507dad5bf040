//! Pretzel knot classification: type, fiberedness and slice obstructions.

pub mod cache;
pub mod classify;
pub mod error;
pub mod dot;
pub mod fibered;
pub mod gf2;
pub mod lattice;
pub mod matrix;
pub mod params;
pub mod plumbing;
pub mod report;

pub use error::{Error, Result};
pub use fibered::{aux_link, is_fibered, subcase, AuxLink, FiberStatus, FiberVerdict, Subcase};
pub use params::{classify_type, mirror, mutation_class, normalize, MutationClass, ParamList, PretzelKind};
pub use plumbing::{
    determinant, euler_number, incidence_matrix, is_negative_definite, negative_definite_graph,
    star_graph, IncidenceMatrix, StarGraph, Vertex,
};
pub use lattice::{
    find_embedding, project_embedding, signature, verify_embedding, wu_class, Embedding, Projection,
    SearchConfig, SearchOutcome, WuClass,
};
pub use classify::{
    analyze, analyze_with, detectably_ribbon_reduce, enumerate, is_exceptional, match_family, Bounds,
    ClassRecord, Donaldson, Family, ObstructionReport, RibbonFamily, Status, Verdict,
};
