//! Cyclic-group actions on lattices: cohomology in degrees 1 and 2,
//! coinvariants with their torsion retained, and component groups of the
//! form (X / coroot lattice) under the same action.
//!
//! Everything here reduces to Smith normal form over the integers. The
//! groups that come out are presented as a free rank plus a divisibility
//! chain of torsion invariants, and elements of such groups carry split
//! free/torsion coordinates so downstream consumers can do arithmetic
//! without re-deriving the presentation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{check_finite_order, kernel_basis, smith_normal_form, Mat};
use crate::root_data::{PinnedAutomorphism, RootDatum};

/// Caps matching the supported catalog: cyclic order and lattice rank.
pub const MAX_ORDER: usize = 24;
pub const MAX_RANK: usize = 16;

/// Finitely generated abelian group Z^free_rank + sum of Z/d_i with
/// d_1 | d_2 | ... and every d_i >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

/// Element of an `FgAbelianGroup`: free coordinates plus torsion
/// coordinates, the latter canonically reduced into [0, d_i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FgElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Self {
        for (i, &d) in torsion.iter().enumerate() {
            assert!(d >= 2, "torsion invariant must be >= 2");
            if i + 1 < torsion.len() {
                assert_eq!(torsion[i + 1] % d, 0, "divisibility chain broken");
            }
        }
        FgAbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Total order when finite.
    pub fn order(&self) -> Option<num_bigint::BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut n = num_bigint::BigInt::from(1);
        for &d in &self.torsion {
            n *= d;
        }
        Some(n)
    }

    pub fn zero(&self) -> FgElement {
        FgElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    pub fn reduce(&self, e: &FgElement) -> FgElement {
        assert_eq!(e.free.len(), self.free_rank);
        assert_eq!(e.torsion.len(), self.torsion.len());
        FgElement {
            free: e.free.clone(),
            torsion: e
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(&x, &d)| x.rem_euclid(d))
                .collect(),
        }
    }

    pub fn add(&self, a: &FgElement, b: &FgElement) -> FgElement {
        self.reduce(&FgElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn neg(&self, a: &FgElement) -> FgElement {
        self.reduce(&FgElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().map(|x| -x).collect(),
        })
    }

    pub fn sub(&self, a: &FgElement, b: &FgElement) -> FgElement {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, c: i64, a: &FgElement) -> FgElement {
        self.reduce(&FgElement {
            free: a.free.iter().map(|x| c * x).collect(),
            torsion: a.torsion.iter().map(|x| c * x).collect(),
        })
    }

    pub fn is_zero(&self, a: &FgElement) -> bool {
        self.reduce(a) == self.zero()
    }

    /// Order of an element (None = infinite).
    pub fn element_order(&self, a: &FgElement) -> Option<i64> {
        let a = self.reduce(a);
        if a.free.iter().any(|&x| x != 0) {
            return None;
        }
        let mut ord = 1i64;
        for (&x, &d) in a.torsion.iter().zip(&self.torsion) {
            if x != 0 {
                let g = gcd(x, d);
                ord = lcm(ord, d / g);
            }
        }
        Some(ord)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// A lattice Z^rank with a cyclic action: `gamma^order = 1`, checked on
/// construction.
#[derive(Clone, Debug)]
pub struct LatticeWithAction {
    pub rank: usize,
    pub gamma: Mat,
    pub order: usize,
}

impl LatticeWithAction {
    pub fn new(gamma: Mat, order: usize) -> Result<Self> {
        let rank = gamma.rows;
        if rank > MAX_RANK {
            return Err(Error::cap(format!("rank {rank} exceeds {MAX_RANK}")));
        }
        if order > MAX_ORDER {
            return Err(Error::cap(format!("order {order} exceeds {MAX_ORDER}")));
        }
        check_finite_order(&gamma, order)?;
        Ok(LatticeWithAction { rank, gamma, order })
    }

    /// The norm N = 1 + gamma + ... + gamma^(order-1).
    pub fn norm(&self) -> Mat {
        let mut n = Mat::zero(self.rank, self.rank);
        let mut p = Mat::identity(self.rank);
        for _ in 0..self.order {
            n = n.add(&p);
            p = p.mul(&self.gamma);
        }
        n
    }

    pub fn gamma_minus_one(&self) -> Mat {
        self.gamma.sub(&Mat::identity(self.rank))
    }
}

/// ker(A)/im(B) for integer matrices with im(B) contained in ker(A);
/// requires the quotient to be finite and panics on rank mismatch between
/// im(B) and ker(A), which cannot happen for the cyclic-action callers.
fn kernel_mod_image(a: &Mat, b: &Mat) -> FgAbelianGroup {
    let kernel = kernel_basis(a);
    let k = kernel.len();
    if k == 0 {
        return FgAbelianGroup::trivial();
    }
    let kmat = Mat::from_cols(&kernel);
    // ker(A) is saturated, so its SNF is [I; 0] after the transform: solving
    // K x = c over Z succeeds exactly for c in the kernel's rational span,
    // which contains every column of B here.
    let ks = smith_normal_form(&kmat);
    assert!(
        ks.diag.iter().all(|&d| d == 1),
        "kernel basis not saturated"
    );
    let mut coords = Vec::with_capacity(b.cols);
    for j in 0..b.cols {
        let col = b.col(j);
        let ub = ks.u.apply(&col);
        // K = U^-1 [I;0] V^-1, so x = V * (first k coords of U c); the rest
        // must vanish because the column lies in the span.
        for (i, &x) in ub.iter().enumerate().skip(k) {
            assert_eq!(x, 0, "image column {j} outside kernel (row {i})");
        }
        coords.push(ks.v.apply(&ub[..k]));
    }
    let amat = Mat::from_cols(&coords);
    let asnf = smith_normal_form(&amat);
    let rank_im = asnf.diag.iter().filter(|&&d| d != 0).count();
    assert_eq!(rank_im, k, "quotient is infinite");
    FgAbelianGroup::new(0, asnf.diag.iter().copied().filter(|&d| d >= 2).collect())
}

/// H^1 of the cyclic group on the lattice: ker(N)/im(gamma - 1).
pub fn cyclic_h1(x: &LatticeWithAction) -> FgAbelianGroup {
    kernel_mod_image(&x.norm(), &x.gamma_minus_one())
}

/// H^2 of the cyclic group on the lattice: ker(gamma - 1)/im(N).
pub fn cyclic_h2(x: &LatticeWithAction) -> FgAbelianGroup {
    kernel_mod_image(&x.gamma_minus_one(), &x.norm())
}

/// |H^1| along an independent path: the product of the nonzero elementary
/// divisors of (gamma - 1) alone. The image of (gamma - 1) has full rank
/// inside the saturated lattice ker(N), so the index [ker N : im(gamma-1)]
/// is exactly that product; dually |H^2| is the same functional of N.
pub fn cyclic_h1_order_by_divisors(x: &LatticeWithAction) -> num_bigint::BigInt {
    product_of_nonzero_divisors(&x.gamma_minus_one())
}

pub fn cyclic_h2_order_by_divisors(x: &LatticeWithAction) -> num_bigint::BigInt {
    product_of_nonzero_divisors(&x.norm())
}

fn product_of_nonzero_divisors(m: &Mat) -> num_bigint::BigInt {
    let snf = smith_normal_form(m);
    let mut p = num_bigint::BigInt::from(1);
    for &d in snf.diag.iter().filter(|&&d| d != 0) {
        p *= d;
    }
    p
}

/// The coinvariant lattice X_I = X/(gamma - 1)X in Smith presentation,
/// with the projection and an integral section. Torsion is retained.
#[derive(Clone, Debug)]
pub struct CoinvariantLattice {
    pub ambient_rank: usize,
    pub group: FgAbelianGroup,
    u: Mat,
    u_inv: Mat,
    /// Positions in the Smith basis: unit positions are dropped, torsion
    /// positions carry d_i >= 2, free positions carry d_i = 0.
    torsion_pos: Vec<usize>,
    free_pos: Vec<usize>,
}

impl CoinvariantLattice {
    /// Projection X -> X_I.
    pub fn project(&self, lambda: &[i64]) -> FgElement {
        assert_eq!(lambda.len(), self.ambient_rank);
        let y = self.u.apply(lambda);
        self.group.reduce(&FgElement {
            free: self.free_pos.iter().map(|&i| y[i]).collect(),
            torsion: self.torsion_pos.iter().map(|&i| y[i]).collect(),
        })
    }

    /// An integral section of the projection: project(section(e)) == e.
    pub fn section(&self, e: &FgElement) -> Vec<i64> {
        let e = self.group.reduce(e);
        let mut y = vec![0i64; self.ambient_rank];
        for (k, &i) in self.free_pos.iter().enumerate() {
            y[i] = e.free[k];
        }
        for (k, &i) in self.torsion_pos.iter().enumerate() {
            y[i] = e.torsion[k];
        }
        self.u_inv.apply(&y)
    }

    /// Free-part coordinates of an element (the image in X_I modulo torsion).
    pub fn free_part(&self, e: &FgElement) -> Vec<i64> {
        self.group.reduce(e).free
    }

    /// Action on X_I induced by an ambient lattice map commuting with gamma.
    pub fn act(&self, w: &Mat, e: &FgElement) -> FgElement {
        self.project(&w.apply(&self.section(e)))
    }

    /// Embeds a free-coordinate vector as an element with zero torsion.
    pub fn from_free(&self, free: Vec<i64>) -> FgElement {
        assert_eq!(free.len(), self.group.free_rank);
        FgElement {
            free,
            torsion: vec![0; self.group.torsion.len()],
        }
    }
}

/// Computes X/(gamma - 1)X with its projection map.
pub fn coinvariants(x: &LatticeWithAction) -> CoinvariantLattice {
    let m = x.gamma_minus_one();
    let snf = smith_normal_form(&m);
    let mut torsion_pos = Vec::new();
    let mut free_pos = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..x.rank {
        let d = if i < snf.diag.len() { snf.diag[i] } else { 0 };
        if d == 0 {
            free_pos.push(i);
        } else if d >= 2 {
            torsion_pos.push(i);
            torsion.push(d);
        }
    }
    CoinvariantLattice {
        ambient_rank: x.rank,
        group: FgAbelianGroup::new(free_pos.len(), torsion),
        u: snf.u,
        u_inv: snf.u_inv,
        torsion_pos,
        free_pos,
    }
}

/// The coinvariants of X modulo the span of the given columns: the
/// cokernel of [cols | gamma - 1]. With the coroot matrix as `cols` this
/// is the component group (X / coroot lattice)_I.
pub fn quotient_coinvariants(cols: &Mat, gamma_minus_one: &Mat) -> FgAbelianGroup {
    let stacked = cols.hconcat(gamma_minus_one);
    let snf = smith_normal_form(&stacked);
    let rank = snf.diag.iter().filter(|&&d| d != 0).count();
    FgAbelianGroup::new(
        stacked.rows - rank,
        snf.diag.iter().copied().filter(|&d| d >= 2).collect(),
    )
}

/// Kottwitz component group pi_1(G)_I = (X_*(T)/coroot lattice)_I.
pub fn kottwitz_pi1(rd: &RootDatum, gamma: &PinnedAutomorphism) -> FgAbelianGroup {
    let coroot_cols = if rd.coroots.is_empty() {
        Mat::zero(rd.rank, 0)
    } else {
        Mat::from_cols(&rd.coroots)
    };
    let gm1 = gamma.matrix.sub(&Mat::identity(rd.rank));
    quotient_coinvariants(&coroot_cols, &gm1)
}
