//! Discrete configuration spaces of finite simple graphs and the invariants
//! of their braid groups.
//!
//! The cell complex `UD_n(Γ)` has one `d`-cube for every way to place `n`
//! tokens on pairwise disjoint vertices and edges of `Γ` with exactly `d`
//! tokens mid-edge. This crate builds those complexes, computes their
//! rational homology, extracts maximal product subcomplexes and the special
//! (square) part for two tokens, assembles the intersection complex of the
//! products, and decides group-level questions — freeness, hyperbolicity,
//! free ranks, and quasi-isometry to right-angled Artin groups — where a
//! decision procedure exists.
//!
//! Module map:
//! - [`graph`]: simple graphs with named vertices, subgraphs, cycles,
//!   blocks, planarity, subdivision, minimal models.
//! - [`ud`]: the configuration-space complexes `UD_n(Γ)`.
//! - [`cube`]: cube complexes, homology, hyperplanes, specialness.
//! - [`products`]: standard subgraphs, maximal products, separability, the
//!   square subcomplex for two tokens, and the hierarchy report.
//! - [`icomplex`]: the intersection complex of maximal products.
//! - [`grapes`]: trees with triangle multiplicities and their fast decision
//!   procedures.
//! - [`classify`]: braid-group verdicts by strand count.
//! - [`rank`]: exact integer matrix rank.
//! - [`corpus`]: named example graphs and deterministic random generators.
//! - [`reference`]: slow brute-force oracles used to validate the fast
//!   implementations in tests.

pub mod classify;
pub mod corpus;
pub mod cube;
pub mod error;
pub mod graph;
pub mod grapes;
pub mod icomplex;
pub mod products;
pub mod rank;
pub mod reference;
pub mod ud;

pub use classify::{
    braid_free, braid_hyperbolic, detect_elementary, elementary_rank, free_abelian_witness,
    free_rank, ElementaryGrapeType, FreeAbelianWitness,
};
pub use cube::CubeComplex;
pub use error::{Error, Result};
pub use graph::{EId, Graph, Sub, VId};
pub use grapes::{
    free_factor_rank, grape_icomplex, grape_status, icomplex_filtration, path_stem_raag,
    qi_raag_verdict, recognize_grapes, twig_maximal_products, Grape, GrapeStatus, LeafSequence,
    LoopVerdict, NonRaagWitness, QiRaagVerdict, RaagGraph,
};
pub use icomplex::{build_intersection_complex, ic_analysis, IcAnalysis, IntersectionComplex};
pub use products::{
    build_up2, condition_a, condition_b, condition_c, hierarchy_report, maximal_products,
    AbstractGraph, HierarchyReport, StandardPair,
};
pub use ud::{build_ud, ConfigSpace};
