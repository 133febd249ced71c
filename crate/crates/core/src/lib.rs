//! Exact combinatorial invariants of reductive groups over local fields:
//! root data and their foldings under diagram automorphisms, Iwahori-Weyl
//! groups with length and Bruhat order, admissible sets and their parahoric
//! variants, finite-field lattice-chain models, Iwahori-Hecke algebra
//! elements, and the classification table for classical forms.
//!
//! Everything is integer-exact; no floating point appears anywhere. Values
//! are immutable after construction and all operations are pure, so the
//! types can be shared freely across threads.

pub mod error;
pub mod intmat;

pub mod admissible;
pub mod affine_weyl;
pub mod classical_catalog;
pub mod galois_lattice;
pub mod hecke;
pub mod lattice_chain;
pub mod root_data;

pub use error::{Error, Result};
pub use intmat::{smith_normal_form, Mat, SmithNormalForm};

pub use galois_lattice::{
    coinvariants, cyclic_h1, cyclic_h2, kottwitz_pi1, CoinvariantLattice, FgAbelianGroup,
    FgElement, LatticeWithAction,
};
pub use root_data::{
    build_root_datum, dominant_representative, fold, pinned_automorphism, two_rho_pairing, Family,
    GroupSpec, PinnedAutomorphism, RelativeRootDatum, RootDatum,
};

pub use admissible::{
    adm, adm_parahoric, lambda_orbit, point_count_poly, point_count_report, AdmissibleSet,
    ParahoricSubgroup, PointCountReport, QPoly,
};
pub use affine_weyl::{make_iwahori_weyl, Caps, ExtAffineWeylElement, ExtAffineWeylGroup};
pub use classical_catalog::{
    catalog, classify_form, division_order_presentation, Algebra, AlgebraClass, CatalogEntry,
    DivisionPresentation, FormKind, FormSpec, Subcase, Twist,
};
pub use hecke::{
    a_mu_minuscule, inertia_invariant_dim, z_mu_support, AMu, HeckeAlgebra, HeckeElement,
    LaurentPoly, ZMuSupportReport,
};
pub use lattice_chain::{
    compare_with_admissible, enumerate_gl_points, enumerate_gsp_points, standard_transitions,
    ChainCompareReport, ChainConfiguration, ChainShape,
};
