//! Catalog of self-dual form classes over a two-dimensional local base and
//! the affine types of their automorphism groups.
//!
//! The base is a complete discrete valuation ring `W[v]` whose residue ring
//! `W` is itself local with finite residue field of odd characteristic.  A
//! form over `W[v]` — alternating, symmetric, or (anti-)hermitian over a
//! quadratic, quaternion, or division algebra — determines a reductive group
//! over the `v`-adic fraction field.  Each catalog row records, for one
//! isomorphism class of forms:
//!
//! * a schematic affine type (`tits_symbol`), subscripts left symbolic;
//! * the order of the Galois twist, i.e. the degree of a minimal extension
//!   of the `v`-adic base splitting the group (`inertia_order`);
//! * whether the group is quasi-split;
//! * the folding datum: the absolute family, the rule giving the absolute
//!   rank in terms of the module rank `n`, and whether the residual inertia
//!   action folds the absolute diagram by its involution.
//!
//! The folding data follow from the discriminants of the residual quadratic
//! spaces: over the maximal unramified extension of the `v`-adic field only
//! the class of the discriminant survives, a trivial class leaving the
//! diagram untwisted and a uniformizer class folding it.  Quaternionic
//! anti-hermitian lines of twist `c` contribute the class of the reduced norm
//! of `c`, so the two-line case depends on the chosen pair of twist classes;
//! the catalog fixes the representative pair (one unit twist, one uniformizer
//! twist), whose discriminant class is that of the uniformizer.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::Mat;
use crate::root_data::{
    build_root_datum, pinned_automorphism, pinned_identity, AutKind, AutName, Family, GroupSpec,
    PinnedAutomorphism, RootDatum,
};

/// Coefficient algebra of a form.  For the symmetric cases twisted by a
/// plane, the field records the algebra of the twisting summand (the split
/// cases use `Matrix`, the quasi-split ones a quadratic extension, the
/// non-quasi-split ones the quaternion algebra).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algebra {
    /// The base ring itself.
    Matrix,
    /// The unramified quadratic extension.
    Unramified,
    /// A ramified quadratic extension.
    Ramified,
    /// The quaternion algebra ramified in `v`.
    Quaternion,
    /// The central division algebra of invariant `s/d`.
    Division { s: i64, d: i64 },
}

/// Coefficient algebra with the division invariant forgotten; this is what a
/// catalog row constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraClass {
    Matrix,
    Unramified,
    Ramified,
    Quaternion,
    Division,
}

impl Algebra {
    pub fn class(&self) -> AlgebraClass {
        match self {
            Algebra::Matrix => AlgebraClass::Matrix,
            Algebra::Unramified => AlgebraClass::Unramified,
            Algebra::Ramified => AlgebraClass::Ramified,
            Algebra::Quaternion => AlgebraClass::Quaternion,
            Algebra::Division { .. } => AlgebraClass::Division,
        }
    }

    /// Checks the division invariant: `0 < s < d` with `s` prime to `d`.
    pub fn validate(&self) -> Result<()> {
        if let Algebra::Division { s, d } = *self {
            if d < 2 {
                return Err(Error::validation("division degree must be at least 2"));
            }
            if s <= 0 || s >= d {
                return Err(Error::validation(format!(
                    "division invariant needs 0 < s < d, got s={s}, d={d}"
                )));
            }
            if num_integer::gcd(s, d) != 1 {
                return Err(Error::validation(format!(
                    "division invariant s/d must be reduced, got {s}/{d}"
                )));
            }
        }
        Ok(())
    }
}

impl AlgebraClass {
    pub fn label(&self) -> &'static str {
        match self {
            AlgebraClass::Matrix => "matrix",
            AlgebraClass::Unramified => "unramified quadratic",
            AlgebraClass::Ramified => "ramified quadratic",
            AlgebraClass::Quaternion => "quaternion",
            AlgebraClass::Division => "division",
        }
    }
}

/// Symmetry type of the form.  `None` is the degenerate case of a bare
/// module over a division algebra, carrying no form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    Alternating,
    Symmetric,
    Hermitian,
    QuaternionHermitian,
    QuaternionAntiHermitian,
    None,
}

impl FormKind {
    pub fn label(&self) -> &'static str {
        match self {
            FormKind::Alternating => "alternating",
            FormKind::Symmetric => "symmetric",
            FormKind::Hermitian => "hermitian",
            FormKind::QuaternionHermitian => "quaternion-hermitian",
            FormKind::QuaternionAntiHermitian => "quaternion-anti-hermitian",
            FormKind::None => "none",
        }
    }
}

/// Twist class of a quaternionic anti-hermitian line: the unit `zeta`, the
/// uniformizing element `x`, or `x` times the auxiliary unit `xi`.  Only the
/// class of the reduced norm matters for the folding: `zeta` has unit norm,
/// the other two have norms of odd valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Twist {
    Zeta,
    X,
    XXi,
}

/// Subcase tag distinguishing forms with the same algebra and kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcase {
    Split,
    QuasiSplit,
    NonQuasiSplit,
    /// The only case for this algebra/kind combination.
    Single,
    /// Anti-hermitian, no twisted line (the form is a sum of hyperbolic
    /// planes).
    CaseA,
    /// Anti-hermitian, one twisted line.
    CaseB {
        twist: Twist,
    },
    /// Anti-hermitian, two twisted lines of distinct classes.
    CaseC,
    /// Anti-hermitian, three twisted lines, one of each class.
    CaseD,
}

impl Subcase {
    /// The row key this subcase selects.  The two uniformizer-norm twists of
    /// case (b) land in the same row.
    pub fn label(&self) -> &'static str {
        match self {
            Subcase::Split => "split",
            Subcase::QuasiSplit => "quasi-split",
            Subcase::NonQuasiSplit => "non-quasi-split",
            Subcase::Single => "single",
            Subcase::CaseA => "case-a",
            Subcase::CaseB { twist: Twist::Zeta } => "case-b (unit twist)",
            Subcase::CaseB { .. } => "case-b (uniformizer twist)",
            Subcase::CaseC => "case-c",
            Subcase::CaseD => "case-d",
        }
    }
}

/// A concrete form: coefficient algebra, symmetry kind, subcase, and the
/// rank `n` of the underlying module over the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSpec {
    pub algebra: Algebra,
    pub kind: FormKind,
    pub subcase: Subcase,
    pub n: i64,
}

/// Parity constraint of a catalog row's rank window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(&self, n: i64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 != 0,
        }
    }
}

/// Rule computing the absolute rank of the folding datum from the module
/// rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankRule {
    /// Absolute rank `n`.
    Full,
    /// Absolute rank `n - 1`.
    MinusOne,
    /// Absolute rank `n / 2` (even windows).
    Half,
    /// Absolute rank `(n - 1) / 2` (odd windows).
    HalfOdd,
    /// Absolute rank `n * d - 1` over a division algebra of degree `d`.
    DivisionFull,
}

/// One row of the classification table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub algebra: AlgebraClass,
    pub kind: FormKind,
    /// Matches [`Subcase::label`].
    pub subcase: &'static str,
    pub parity: Parity,
    /// Smallest admitted rank respecting the parity constraint.
    pub min_n: i64,
    /// Schematic affine type; subscripts are left symbolic.
    #[serde(rename = "symbol")]
    pub tits_symbol: &'static str,
    /// Degree of a minimal splitting extension of the `v`-adic base; `None`
    /// on the division row, where it equals the division degree `d`.
    pub inertia_order: Option<i64>,
    pub quasi_split: bool,
    /// Absolute family of the folding datum.
    pub family: Family,
    pub rank_rule: RankRule,
    /// Whether residual inertia folds the absolute diagram by its
    /// involution.
    pub flip: bool,
    pub description: &'static str,
}

#[allow(clippy::too_many_arguments)]
const fn entry(
    id: &'static str,
    algebra: AlgebraClass,
    kind: FormKind,
    subcase: &'static str,
    parity: Parity,
    min_n: i64,
    tits_symbol: &'static str,
    inertia_order: Option<i64>,
    quasi_split: bool,
    family: Family,
    rank_rule: RankRule,
    flip: bool,
    description: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        id,
        algebra,
        kind,
        subcase,
        parity,
        min_n,
        tits_symbol,
        inertia_order,
        quasi_split,
        family,
        rank_rule,
        flip,
        description,
    }
}

static CATALOG: [CatalogEntry; 19] = [
    entry(
        "alternating-split",
        AlgebraClass::Matrix,
        FormKind::Alternating,
        "split",
        Parity::Any,
        2,
        "C_n",
        Some(1),
        true,
        Family::C,
        RankRule::Full,
        false,
        "alternating form on a free module of rank 2n; the split symplectic group",
    ),
    entry(
        "symmetric-split-odd",
        AlgebraClass::Matrix,
        FormKind::Symmetric,
        "split",
        Parity::Odd,
        7,
        "B_m",
        Some(1),
        true,
        Family::B,
        RankRule::HalfOdd,
        false,
        "split symmetric form of odd rank n = 2m + 1",
    ),
    entry(
        "symmetric-split-even",
        AlgebraClass::Matrix,
        FormKind::Symmetric,
        "split",
        Parity::Even,
        6,
        "D_m",
        Some(1),
        true,
        Family::D,
        RankRule::Half,
        false,
        "split symmetric form of even rank n = 2m",
    ),
    entry(
        "symmetric-quasi-split-unramified",
        AlgebraClass::Unramified,
        FormKind::Symmetric,
        "quasi-split",
        Parity::Even,
        8,
        "²D_m",
        Some(2),
        true,
        Family::D,
        RankRule::Half,
        false,
        "symmetric form of even rank with one plane carrying the norm form of \
         the unramified quadratic extension",
    ),
    entry(
        "symmetric-quasi-split-ramified",
        AlgebraClass::Ramified,
        FormKind::Symmetric,
        "quasi-split",
        Parity::Even,
        6,
        "C-B_{m-1}",
        Some(2),
        true,
        Family::D,
        RankRule::Half,
        true,
        "symmetric form of even rank with one plane carrying the norm form of \
         a ramified quadratic extension; inertia folds the even orthogonal \
         diagram",
    ),
    entry(
        "symmetric-non-quasi-split-even",
        AlgebraClass::Quaternion,
        FormKind::Symmetric,
        "non-quasi-split",
        Parity::Even,
        6,
        "²D′_m",
        Some(2),
        false,
        Family::D,
        RankRule::Half,
        false,
        "symmetric form of even rank with one plane carrying the reduced norm \
         of the quaternion algebra; the twist is inner, leaving the diagram \
         untwisted",
    ),
    entry(
        "symmetric-non-quasi-split-odd",
        AlgebraClass::Quaternion,
        FormKind::Symmetric,
        "non-quasi-split",
        Parity::Odd,
        7,
        "²B′_m",
        Some(2),
        false,
        Family::B,
        RankRule::HalfOdd,
        false,
        "symmetric form of odd rank with one plane carrying the reduced norm \
         of the quaternion algebra; inner form of the odd orthogonal group",
    ),
    entry(
        "hermitian-unramified",
        AlgebraClass::Unramified,
        FormKind::Hermitian,
        "quasi-split",
        Parity::Any,
        3,
        "²A′_{n-1}",
        Some(2),
        true,
        Family::A,
        RankRule::MinusOne,
        false,
        "hermitian form over the unramified quadratic extension; quasi-split \
         unitary group, split by an unramified extension",
    ),
    entry(
        "hermitian-ramified-odd",
        AlgebraClass::Ramified,
        FormKind::Hermitian,
        "quasi-split",
        Parity::Odd,
        3,
        "C-BC_m",
        Some(2),
        true,
        Family::A,
        RankRule::MinusOne,
        true,
        "hermitian form of odd rank n = 2m + 1 over a ramified quadratic \
         extension; inertia folds the diagram of the special linear group",
    ),
    entry(
        "hermitian-ramified-even",
        AlgebraClass::Ramified,
        FormKind::Hermitian,
        "quasi-split",
        Parity::Even,
        4,
        "B-C_m",
        Some(2),
        true,
        Family::A,
        RankRule::MinusOne,
        true,
        "hermitian form of even rank n = 2m over a ramified quadratic \
         extension, maximal Witt index",
    ),
    entry(
        "hermitian-non-quasi-split-ramified",
        AlgebraClass::Ramified,
        FormKind::Hermitian,
        "non-quasi-split",
        Parity::Even,
        4,
        "²B-C_m",
        Some(2),
        false,
        Family::A,
        RankRule::MinusOne,
        true,
        "hermitian form of even rank over a ramified quadratic extension, \
         non-maximal Witt index",
    ),
    entry(
        "hermitian-non-quasi-split-unramified",
        AlgebraClass::Unramified,
        FormKind::Hermitian,
        "non-quasi-split",
        Parity::Even,
        4,
        "²A″_{n-1}",
        Some(2),
        false,
        Family::A,
        RankRule::MinusOne,
        false,
        "hermitian form of even rank over the unramified quadratic extension, \
         non-maximal Witt index",
    ),
    entry(
        "quaternion-hermitian",
        AlgebraClass::Quaternion,
        FormKind::QuaternionHermitian,
        "single",
        Parity::Any,
        2,
        "²C_n",
        Some(2),
        false,
        Family::C,
        RankRule::Full,
        false,
        "hermitian form over the quaternion algebra; inner form of the \
         symplectic group",
    ),
    entry(
        "anti-hermitian-a",
        AlgebraClass::Quaternion,
        FormKind::QuaternionAntiHermitian,
        "case-a",
        Parity::Even,
        6,
        "²D″_n",
        Some(2),
        false,
        Family::D,
        RankRule::Full,
        false,
        "quaternionic anti-hermitian form of even rank, a sum of hyperbolic \
         planes",
    ),
    entry(
        "anti-hermitian-b-unit",
        AlgebraClass::Quaternion,
        FormKind::QuaternionAntiHermitian,
        "case-b (unit twist)",
        Parity::Odd,
        5,
        "²D″_n",
        Some(2),
        false,
        Family::D,
        RankRule::Full,
        false,
        "quaternionic anti-hermitian form of odd rank with one line of unit \
         twist; the residual discriminant is trivial",
    ),
    entry(
        "anti-hermitian-b-uniformizer",
        AlgebraClass::Quaternion,
        FormKind::QuaternionAntiHermitian,
        "case-b (uniformizer twist)",
        Parity::Odd,
        3,
        "²C-B_{n-1}",
        Some(2),
        false,
        Family::D,
        RankRule::Full,
        true,
        "quaternionic anti-hermitian form of odd rank with one line whose \
         twist has reduced norm of odd valuation; inertia folds the diagram",
    ),
    entry(
        "anti-hermitian-c",
        AlgebraClass::Quaternion,
        FormKind::QuaternionAntiHermitian,
        "case-c",
        Parity::Even,
        4,
        "⁴D_n",
        Some(4),
        false,
        Family::D,
        RankRule::Full,
        true,
        "quaternionic anti-hermitian form of even rank with two twisted lines \
         of distinct classes; folding is stated for the representative pair \
         of one unit and one uniformizer twist",
    ),
    entry(
        "anti-hermitian-d",
        AlgebraClass::Quaternion,
        FormKind::QuaternionAntiHermitian,
        "case-d",
        Parity::Odd,
        5,
        "⁴D_n",
        Some(4),
        false,
        Family::D,
        RankRule::Full,
        false,
        "quaternionic anti-hermitian form of odd rank with three twisted \
         lines, one of each class; the residual discriminant is trivial",
    ),
    entry(
        "division",
        AlgebraClass::Division,
        FormKind::None,
        "single",
        Parity::Any,
        1,
        "ᵈA_{md-1}",
        None,
        false,
        Family::A,
        RankRule::DivisionFull,
        false,
        "bare module of rank m over the division algebra of invariant s/d; \
         inner form of the special linear group",
    ),
];

/// The full classification table, in the traditional order: alternating,
/// symmetric, hermitian, quaternion-hermitian, quaternionic anti-hermitian,
/// division.
pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

impl CatalogEntry {
    /// Human-readable rank window, e.g. `"even n >= 6"`.
    pub fn window(&self) -> String {
        match self.parity {
            Parity::Any => format!("n >= {}", self.min_n),
            Parity::Even => format!("even n >= {}", self.min_n),
            Parity::Odd => format!("odd n >= {}", self.min_n),
        }
    }

    /// Whether the rank `n` lies in this row's window.
    pub fn admits(&self, n: i64) -> bool {
        self.parity.admits(n) && n >= self.min_n
    }

    fn check(&self, spec: &FormSpec) -> Result<()> {
        spec.algebra.validate()?;
        if self.algebra != spec.algebra.class()
            || self.kind != spec.kind
            || self.subcase != spec.subcase.label()
        {
            return Err(Error::validation(format!(
                "form does not belong to catalog row {}",
                self.id
            )));
        }
        if !self.admits(spec.n) {
            return Err(Error::validation(format!(
                "rank {} is outside the window for {} ({})",
                spec.n,
                self.id,
                self.window()
            )));
        }
        Ok(())
    }

    /// Rank of the absolute root datum underlying the folding.
    pub fn absolute_rank(&self, spec: &FormSpec) -> Result<usize> {
        self.check(spec)?;
        let n = spec.n;
        let r = match self.rank_rule {
            RankRule::Full => n,
            RankRule::MinusOne => n - 1,
            RankRule::Half => n / 2,
            RankRule::HalfOdd => (n - 1) / 2,
            RankRule::DivisionFull => match spec.algebra {
                Algebra::Division { d, .. } => n * d - 1,
                _ => unreachable!("division rank rule only appears on the division row"),
            },
        };
        Ok(r as usize)
    }

    /// Rank of the folded (relative) datum.
    pub fn relative_rank(&self, spec: &FormSpec) -> Result<usize> {
        let a = self.absolute_rank(spec)?;
        if !self.flip {
            return Ok(a);
        }
        Ok(match self.family {
            Family::A => a.div_ceil(2),
            Family::D => a - 1,
            _ => unreachable!("folded rows are of type A or D"),
        })
    }

    /// Degree of a minimal splitting extension of the `v`-adic base.
    pub fn inertia_degree(&self, spec: &FormSpec) -> Result<i64> {
        self.check(spec)?;
        match self.inertia_order {
            Some(e) => Ok(e),
            None => match spec.algebra {
                Algebra::Division { d, .. } => Ok(d),
                _ => unreachable!("open inertia order only appears on the division row"),
            },
        }
    }

    /// The folding datum: the simply-connected absolute root datum together
    /// with the residual inertia action on it.
    pub fn folding(&self, spec: &FormSpec) -> Result<(RootDatum, PinnedAutomorphism)> {
        let rank = self.absolute_rank(spec)?;
        let rd = build_root_datum(&GroupSpec::new(self.family, rank))?;
        let gamma = if self.flip {
            pinned_automorphism(&rd, 2, &AutKind::Named(AutName::Flip))?
        } else {
            pinned_identity(&rd)
        };
        Ok((rd, gamma))
    }
}

/// Finds the catalog row a form belongs to.  Rejections name the subcases
/// (or kinds) that would have been valid for the given algebra.
pub fn classify_form(spec: &FormSpec) -> Result<&'static CatalogEntry> {
    spec.algebra.validate()?;
    if spec.n < 1 {
        return Err(Error::validation("module rank must be positive"));
    }
    let class = spec.algebra.class();
    let combo: Vec<&CatalogEntry> = CATALOG
        .iter()
        .filter(|e| e.algebra == class && e.kind == spec.kind)
        .collect();
    if combo.is_empty() {
        let mut kinds: Vec<&str> = CATALOG
            .iter()
            .filter(|e| e.algebra == class)
            .map(|e| e.kind.label())
            .collect();
        kinds.dedup();
        return Err(Error::validation(format!(
            "no {} forms over the {} algebra; valid kinds here: {}",
            spec.kind.label(),
            class.label(),
            kinds.join(", ")
        )));
    }
    let key = spec.subcase.label();
    let subs: Vec<&CatalogEntry> = combo.iter().copied().filter(|e| e.subcase == key).collect();
    if subs.is_empty() {
        let mut labels: Vec<&str> = combo.iter().map(|e| e.subcase).collect();
        labels.dedup();
        return Err(Error::validation(format!(
            "no subcase \"{}\" for {} forms over the {} algebra; valid subcases: {}",
            key,
            spec.kind.label(),
            class.label(),
            labels.join(", ")
        )));
    }
    let fitting: Vec<&CatalogEntry> = subs.iter().copied().filter(|e| e.admits(spec.n)).collect();
    match fitting.len() {
        1 => Ok(fitting[0]),
        0 => {
            let windows: Vec<String> = subs
                .iter()
                .map(|e| format!("{} ({})", e.id, e.window()))
                .collect();
            Err(Error::validation(format!(
                "rank {} is outside every window for this case: {}",
                spec.n,
                windows.join(", ")
            )))
        }
        _ => unreachable!("catalog rows overlap"),
    }
}

/// Presentation data of the division order of invariant `s/d`: the order is
/// generated over its unramified degree-`d` subring by an element `X` with
///
/// ```text
/// X^d = u,    f * X = X * sigma^s(f)
/// ```
///
/// where `u` is the uniformizer of the base and `sigma` the Frobenius of the
/// subring.  On the standard lattice basis, right multiplication by `X` acts
/// by a Coxeter-type permutation matrix with a single uniformizer entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPresentation {
    pub s: i64,
    pub d: i64,
    /// Basis image of the twist: `e_i -> e_{perm[i]}` (0-based).
    pub permutation: Vec<usize>,
    /// The lone matrix entry carrying the uniformizer.
    pub uniformizer_entry: (usize, usize),
}

impl DivisionPresentation {
    /// The twist matrix with the uniformizer specialized to `pi`.  Its
    /// `d`-th power is `pi` times the identity: since `gcd(s, d) = 1` the
    /// orbit of each basis vector passes the marked position exactly once,
    /// matching `X^d = u`.
    pub fn twist_matrix(&self, pi: i64) -> Mat {
        let d = self.d as usize;
        let mut m = Mat::zero(d, d);
        for (i, &j) in self.permutation.iter().enumerate() {
            m[(j, i)] = if (j, i) == self.uniformizer_entry {
                pi
            } else {
                1
            };
        }
        m
    }
}

impl fmt::Display for DivisionPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{} = u, f X = X sigma^{}(f)", self.d, self.s)
    }
}

/// Builds the presentation of the division order of invariant `s/d`.
pub fn division_order_presentation(s: i64, d: i64) -> Result<DivisionPresentation> {
    Algebra::Division { s, d }.validate()?;
    let du = d as usize;
    let su = s as usize;
    let permutation: Vec<usize> = (0..du).map(|i| (i + su) % du).collect();
    Ok(DivisionPresentation {
        s,
        d,
        permutation,
        // e_d picks up the uniformizer; its image is e_{s} (1-based), so the
        // marked entry sits at row s-1, column d-1.
        uniformizer_entry: (su - 1, du - 1),
    })
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Matrix => write!(f, "matrix"),
            Algebra::Unramified => write!(f, "unramified"),
            Algebra::Ramified => write!(f, "ramified"),
            Algebra::Quaternion => write!(f, "quaternion"),
            Algebra::Division { s, d } => write!(f, "division:{s}/{d}"),
        }
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" => return Ok(Algebra::Matrix),
            "unramified" => return Ok(Algebra::Unramified),
            "ramified" => return Ok(Algebra::Ramified),
            "quaternion" => return Ok(Algebra::Quaternion),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("division:") {
            let (a, b) = rest
                .split_once(['/', ','])
                .ok_or_else(|| Error::validation("expected division:S/D"))?;
            let s: i64 = a
                .trim()
                .parse()
                .map_err(|_| Error::validation("bad division invariant"))?;
            let d: i64 = b
                .trim()
                .parse()
                .map_err(|_| Error::validation("bad division degree"))?;
            let alg = Algebra::Division { s, d };
            alg.validate()?;
            return Ok(alg);
        }
        Err(Error::validation(format!(
            "unknown algebra \"{s}\"; expected matrix, unramified, ramified, quaternion, or division:S/D"
        )))
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "alternating" => FormKind::Alternating,
            "symmetric" => FormKind::Symmetric,
            "hermitian" => FormKind::Hermitian,
            "quaternion-hermitian" => FormKind::QuaternionHermitian,
            "quaternion-anti-hermitian" => FormKind::QuaternionAntiHermitian,
            "none" => FormKind::None,
            _ => {
                return Err(Error::validation(format!(
                    "unknown form kind \"{s}\"; expected alternating, symmetric, hermitian, \
                     quaternion-hermitian, quaternion-anti-hermitian, or none"
                )))
            }
        })
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Zeta => write!(f, "zeta"),
            Twist::X => write!(f, "x"),
            Twist::XXi => write!(f, "x-xi"),
        }
    }
}

impl FromStr for Twist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "zeta" => Twist::Zeta,
            "x" => Twist::X,
            "x-xi" => Twist::XXi,
            _ => {
                return Err(Error::validation(format!(
                    "unknown twist \"{s}\"; expected zeta, x, or x-xi"
                )))
            }
        })
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subcase::CaseB { twist } => write!(f, "case-b:{twist}"),
            other => f.write_str(other.label()),
        }
    }
}

impl FromStr for Subcase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "split" => Subcase::Split,
            "quasi-split" => Subcase::QuasiSplit,
            "non-quasi-split" => Subcase::NonQuasiSplit,
            "single" => Subcase::Single,
            "case-a" => Subcase::CaseA,
            "case-c" => Subcase::CaseC,
            "case-d" => Subcase::CaseD,
            _ => {
                if let Some(t) = s.strip_prefix("case-b:") {
                    return Ok(Subcase::CaseB { twist: t.parse()? });
                }
                return Err(Error::validation(format!(
                    "unknown subcase \"{s}\"; expected split, quasi-split, non-quasi-split, \
                     single, case-a, case-b:<twist>, case-c, or case-d"
                )));
            }
        })
    }
}
