//! Brute-force finite-field oracle for lattice-chain local models.
//!
//! A chain shape is a set of lattice vertices in Z/n for the standard
//! descending chain W_0 ⊃ W_1 ⊃ ... with W_{v+n} = u W_v, where
//! W_v = <u e_1, .., u e_v, e_{v+1}, .., e_n>. Points of the special fiber
//! are tuples of d-dimensional subspaces F_v ⊆ W_v/uW_v carried into each
//! other by the reductions of the inclusions (cyclically, through the
//! u-twist at the seam). The symplectic variant adds perpendicularity
//! F_{(-v) mod n} = F_v^⊥ under the antidiagonal form, which in the chosen
//! bases is literally the same matrix J at every vertex.
//!
//! Everything here is exhaustive enumeration over row-echelon
//! representatives — slow, simple, and independent of the Coxeter-theoretic
//! machinery it is used to cross-check.

use serde::{Deserialize, Serialize};

use crate::admissible::{point_count_poly, ParahoricSubgroup, QPoly};
use crate::affine_weyl::{make_iwahori_weyl, Caps};
use crate::error::{Error, Result};
use crate::root_data::{build_root_datum, pinned_identity, Family, GroupSpec};

/// Largest ambient rank the enumerator accepts.
pub const MAX_CHAIN_AMBIENT: usize = 4;
const ALLOWED_Q: [usize; 4] = [2, 3, 4, 5];

/// Arithmetic tables for F_q, q in {2, 3, 4, 5}.
#[derive(Clone, Debug)]
pub struct Gf {
    pub q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf {
    pub fn new(q: usize) -> Result<Gf> {
        if !ALLOWED_Q.contains(&q) {
            return Err(Error::validation(format!("unsupported field size {q}")));
        }
        let (add, mul): (Vec<Vec<u8>>, Vec<Vec<u8>>) = if q == 4 {
            // F_4 = F_2[x]/(x^2+x+1) with 2 = x, 3 = x+1; addition is xor.
            let add = (0..4)
                .map(|a| (0..4).map(|b| (a ^ b) as u8).collect())
                .collect();
            let mul = vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 2, 3],
                vec![0, 2, 3, 1],
                vec![0, 3, 1, 2],
            ];
            (add, mul)
        } else {
            let add = (0..q)
                .map(|a| (0..q).map(|b| ((a + b) % q) as u8).collect())
                .collect();
            let mul = (0..q)
                .map(|a| (0..q).map(|b| ((a * b) % q) as u8).collect())
                .collect();
            (add, mul)
        };
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a][b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a][b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Ok(Gf {
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

/// A subspace of F_q^n in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    pub rows: Vec<Vec<u8>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, gf: &Gf, v: &[u8]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for k in 0..v.len() {
                    v[k] = gf.sub(v[k], gf.mul(c, row[k]));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Reduced row-echelon form of arbitrary spanning rows.
pub fn rref(gf: &Gf, rows: &[Vec<u8>]) -> Subspace {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        if let Some(sel) = (rank..m.len()).find(|&r| m[r][col] != 0) {
            m.swap(rank, sel);
            let s = gf.inv(m[rank][col]);
            for k in 0..ncols {
                m[rank][k] = gf.mul(m[rank][k], s);
            }
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let c = m[r][col];
                    for k in 0..ncols {
                        m[r][k] = gf.sub(m[r][k], gf.mul(c, m[rank][k]));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
    }
    m.truncate(rank);
    Subspace { rows: m, pivots }
}

/// All d-dimensional subspaces of F_q^n, each exactly once.
pub fn subspaces(gf: &Gf, n: usize, d: usize) -> Vec<Subspace> {
    assert!(d <= n);
    if d == 0 {
        return vec![Subspace {
            rows: Vec::new(),
            pivots: Vec::new(),
        }];
    }
    let mut out = Vec::new();
    // Iterate over pivot column sets via a fixed-size combination odometer.
    let mut piv: Vec<usize> = (0..d).collect();
    loop {
        // Free positions: to the right of each pivot, outside pivot columns.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in piv.iter().enumerate() {
            for c in (p + 1)..n {
                if !piv.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let mut vals = vec![0u8; free.len()];
        loop {
            let mut rows = vec![vec![0u8; n]; d];
            for (i, &p) in piv.iter().enumerate() {
                rows[i][p] = 1;
            }
            for (k, &(i, c)) in free.iter().enumerate() {
                rows[i][c] = vals[k];
            }
            out.push(Subspace {
                rows,
                pivots: piv.clone(),
            });
            // Odometer increment over F_q values.
            let mut k = 0;
            loop {
                if k == vals.len() {
                    break;
                }
                vals[k] += 1;
                if (vals[k] as usize) < gf.q {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
            if k == vals.len() {
                break;
            }
        }
        // Next pivot combination.
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if piv[i] < n - d + i {
                piv[i] += 1;
                for j in (i + 1)..d {
                    piv[j] = piv[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The number of d-dimensional subspaces of F_q^n (Gaussian binomial).
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> u64 {
    if d > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..d {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((d - i) as u32) - 1;
    }
    num / den
}

/// The shape of a periodic (self-dual) lattice chain: the set of vertices
/// v with W_v present, inside Z/n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainShape {
    pub n: usize,
    pub vertices: Vec<usize>,
    pub symplectic: bool,
}

impl ChainShape {
    pub fn gl(n: usize, mut vertices: Vec<usize>) -> Result<ChainShape> {
        vertices.sort_unstable();
        vertices.dedup();
        if n == 0 || vertices.is_empty() || vertices.iter().any(|&v| v >= n) {
            return Err(Error::validation(
                "chain vertices must be a nonempty subset of 0..n",
            ));
        }
        Ok(ChainShape {
            n,
            vertices,
            symplectic: false,
        })
    }

    pub fn gsp(n: usize, vertices: Vec<usize>) -> Result<ChainShape> {
        if n % 2 != 0 || n == 0 {
            return Err(Error::validation(
                "symplectic chains need even ambient rank",
            ));
        }
        let shape = ChainShape::gl(n, vertices)?;
        for &v in &shape.vertices {
            let dual = (n - v) % n;
            if !shape.vertices.contains(&dual) {
                return Err(Error::validation(format!(
                    "symplectic chain is not self-dual: vertex {v} present, {dual} missing"
                )));
            }
        }
        Ok(ChainShape {
            symplectic: true,
            ..shape
        })
    }

    /// The complete chain 0..n.
    pub fn maximal(n: usize, symplectic: bool) -> Result<ChainShape> {
        let all: Vec<usize> = (0..n).collect();
        if symplectic {
            ChainShape::gsp(n, all)
        } else {
            ChainShape::gl(n, all)
        }
    }

    /// The single standard (self-dual) lattice.
    pub fn single(n: usize, symplectic: bool) -> Result<ChainShape> {
        if symplectic {
            ChainShape::gsp(n, vec![0])
        } else {
            ChainShape::gl(n, vec![0])
        }
    }

    pub fn period(&self) -> usize {
        self.vertices.len()
    }

    /// Cokernel ranks r_i of consecutive inclusions, cyclically.
    pub fn ranks(&self) -> Vec<usize> {
        let r = self.period();
        (0..r)
            .map(|i| {
                if i + 1 < r {
                    self.vertices[i + 1] - self.vertices[i]
                } else {
                    self.n + self.vertices[0] - self.vertices[r - 1]
                }
            })
            .collect()
    }

    /// Duality offset: 0 when the standard self-dual lattice is present.
    pub fn duality_index(&self) -> Option<usize> {
        if !self.symplectic {
            return None;
        }
        Some(if self.vertices.contains(&0) { 0 } else { 1 })
    }
}

/// The reductions of the standard inclusions, as n x n 0/1 diagonal
/// matrices: first the maps W_{v_{i+1}} -> W_{v_i} for consecutive
/// vertices, last the seam map u W_{v_0} -> W_{v_last}.
pub fn standard_transitions(shape: &ChainShape) -> Vec<Vec<Vec<u8>>> {
    let n = shape.n;
    let r = shape.period();
    let mut out = Vec::new();
    let masks = transition_masks(shape);
    for i in 0..r {
        let mut m = vec![vec![0u8; n]; n];
        for k in 0..n {
            m[k][k] = masks[i][k];
        }
        out.push(m);
    }
    out
}

/// Diagonal masks of the transitions, in the order of `standard_transitions`.
fn transition_masks(shape: &ChainShape) -> Vec<Vec<u8>> {
    let n = shape.n;
    let r = shape.period();
    let mut out = Vec::new();
    for i in 0..r.saturating_sub(1) {
        // W_{v_{i+1}} -> W_{v_i}: coordinates v_i < k <= v_{i+1} die
        // (1-based k; 0-based index k-1).
        let (lo, hi) = (shape.vertices[i], shape.vertices[i + 1]);
        out.push((0..n).map(|k| u8::from(!(lo <= k && k < hi))).collect());
    }
    // Seam u W_{v_0} -> W_{v_last}: only v_0 < k <= v_last survive.
    let (lo, hi) = (shape.vertices[0], shape.vertices[r - 1]);
    out.push((0..n).map(|k| u8::from(lo <= k && k < hi)).collect());
    out
}

fn apply_mask(mask: &[u8], v: &[u8]) -> Vec<u8> {
    v.iter()
        .zip(mask)
        .map(|(&x, &m)| if m == 1 { x } else { 0 })
        .collect()
}

/// Antidiagonal symplectic Gram matrix on F_q^n (n even): <e_i, e_{n+1-i}>
/// is +1 for i <= n/2 and -1 beyond.
fn symplectic_gram(gf: &Gf, n: usize) -> Vec<Vec<u8>> {
    let mut j = vec![vec![0u8; n]; n];
    for i in 0..n / 2 {
        j[i][n - 1 - i] = 1;
        j[n - 1 - i][i] = gf.neg(1);
    }
    j
}

/// Perp of a subspace under the Gram matrix `j`, as a canonical subspace.
fn perp(gf: &Gf, sub: &Subspace, j: &[Vec<u8>], n: usize) -> Subspace {
    // Equations (row . J) w = 0.
    let eqs: Vec<Vec<u8>> = sub
        .rows
        .iter()
        .map(|row| {
            (0..n)
                .map(|c| {
                    let mut s = 0u8;
                    for i in 0..n {
                        s = gf.add(s, gf.mul(row[i], j[i][c]));
                    }
                    s
                })
                .collect()
        })
        .collect();
    kernel(gf, &eqs, n)
}

/// Kernel of the linear map given by `rows`, as a canonical subspace.
fn kernel(gf: &Gf, rows: &[Vec<u8>], n: usize) -> Subspace {
    let reduced = rref(gf, rows);
    let pivot_set: Vec<usize> = reduced.pivots.clone();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![0u8; n];
        v[fc] = 1;
        for (row, &p) in reduced.rows.iter().zip(&pivot_set) {
            v[p] = gf.neg(row[fc]);
        }
        basis.push(v);
    }
    rref(gf, &basis)
}

/// One solution of the moduli problem: a subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfiguration {
    pub q: usize,
    /// (vertex, RREF basis rows), in vertex order.
    pub subspaces: Vec<(usize, Vec<Vec<u8>>)>,
}

/// Re-checks every moduli condition on a configuration from scratch.
pub fn validate_configuration(
    shape: &ChainShape,
    d: usize,
    config: &ChainConfiguration,
) -> Result<()> {
    let gf = Gf::new(config.q)?;
    let n = shape.n;
    let r = shape.period();
    if config.subspaces.len() != r {
        return Err(Error::validation(
            "configuration has wrong number of members",
        ));
    }
    let mut subs = Vec::new();
    for (slot, &(v, ref rows)) in config.subspaces.iter().enumerate() {
        if v != shape.vertices[slot] {
            return Err(Error::validation(
                "configuration vertices do not match the shape",
            ));
        }
        let s = rref(&gf, rows);
        if s.rows != *rows {
            return Err(Error::validation(
                "configuration rows are not in canonical form",
            ));
        }
        if s.dim() != d {
            return Err(Error::validation(
                "configuration member has wrong dimension",
            ));
        }
        subs.push(s);
    }
    let masks = transition_masks(shape);
    for i in 0..r {
        // Mask i maps slot (i+1) % r into slot i -- the seam wraps.
        let src = &subs[(i + 1) % r];
        let dst = &subs[i];
        for row in &src.rows {
            if !dst.contains(&gf, &apply_mask(&masks[i], row)) {
                return Err(Error::validation(format!(
                    "transition {i} does not respect the chain"
                )));
            }
        }
    }
    if shape.symplectic {
        let j = symplectic_gram(&gf, n);
        for (slot, &v) in shape.vertices.iter().enumerate() {
            let dual_vertex = (n - v) % n;
            let dual_slot = shape
                .vertices
                .iter()
                .position(|&w| w == dual_vertex)
                .expect("self-dual shape");
            if perp(&gf, &subs[slot], &j, n) != subs[dual_slot] {
                return Err(Error::validation(format!(
                    "perpendicularity fails between vertices {v} and {dual_vertex}"
                )));
            }
        }
    }
    Ok(())
}

fn check_caps(shape: &ChainShape, q: usize, d: usize) -> Result<()> {
    if shape.n > MAX_CHAIN_AMBIENT {
        let est = gaussian_binomial(shape.n, d, q as u64) as u128;
        return Err(Error::cap(format!(
            "ambient rank {} exceeds {MAX_CHAIN_AMBIENT}; ~{} configurations per vertex",
            shape.n, est
        )));
    }
    if !ALLOWED_Q.contains(&q) {
        return Err(Error::validation(format!("unsupported field size {q}")));
    }
    Ok(())
}

fn enumerate(
    shape: &ChainShape,
    d: usize,
    q: usize,
    list: bool,
) -> Result<(u64, Option<Vec<ChainConfiguration>>)> {
    check_caps(shape, q, d)?;
    let gf = Gf::new(q)?;
    let n = shape.n;
    let r = shape.period();
    let mut subs = subspaces(&gf, n, d);
    subs.sort();
    let masks = transition_masks(shape);

    // Symplectic bookkeeping: the canonical perp of each subspace, and for
    // each vertex slot the slot holding its dual.
    let (perp_of, dual_slot): (Vec<usize>, Vec<usize>) = if shape.symplectic {
        let j = symplectic_gram(&gf, n);
        let perps: Vec<usize> = subs
            .iter()
            .map(|s| {
                let p = perp(&gf, s, &j, n);
                subs.binary_search(&p).expect("perp has the same dimension")
            })
            .collect();
        let duals = shape
            .vertices
            .iter()
            .map(|&v| {
                let dv = (n - v) % n;
                shape
                    .vertices
                    .iter()
                    .position(|&w| w == dv)
                    .expect("self-dual shape")
            })
            .collect();
        (perps, duals)
    } else {
        (Vec::new(), Vec::new())
    };

    // DFS over vertex slots; chosen[i] = index into subs.
    let mut chosen = vec![usize::MAX; r];
    let mut count = 0u64;
    let mut found = Vec::new();

    fn edge_ok(gf: &Gf, mask: &[u8], src: &Subspace, dst: &Subspace) -> bool {
        src.rows
            .iter()
            .all(|row| dst.contains(gf, &apply_mask(mask, row)))
    }

    // Recursive closure via explicit stack to keep things simple.
    struct Frame {
        slot: usize,
        next_candidate: usize,
    }
    let mut stack = vec![Frame {
        slot: 0,
        next_candidate: 0,
    }];
    while let Some(frame) = stack.last_mut() {
        let slot = frame.slot;
        if frame.next_candidate >= subs.len() {
            // chosen[] entries above the popped slot are always re-assigned
            // before being read again, so no cleanup is needed.
            stack.pop();
            continue;
        }
        let cand = frame.next_candidate;
        frame.next_candidate += 1;

        // Constraint: symplectic self-duality within this slot or with an
        // already-chosen dual slot.
        if shape.symplectic {
            let ds = dual_slot[slot];
            if ds == slot {
                if perp_of[cand] != cand {
                    continue;
                }
            } else if ds < slot && chosen[ds] != perp_of[cand] {
                continue;
            }
        }
        // Constraint: edge from the previously chosen slot. Mask i maps
        // slot i+1 into slot i, so choosing slot in increasing order means
        // checking mask (slot-1): chosen[slot] -> chosen[slot-1].
        if slot > 0 && !edge_ok(&gf, &masks[slot - 1], &subs[cand], &subs[chosen[slot - 1]]) {
            continue;
        }
        chosen[slot] = cand;
        if slot + 1 < r {
            stack.push(Frame {
                slot: slot + 1,
                next_candidate: 0,
            });
            continue;
        }
        // Complete assignment: seam edge maps slot 0 into slot r-1.
        if !edge_ok(&gf, &masks[r - 1], &subs[chosen[0]], &subs[chosen[r - 1]]) {
            chosen[slot] = usize::MAX;
            continue;
        }
        count += 1;
        if list {
            let config = ChainConfiguration {
                q,
                subspaces: shape
                    .vertices
                    .iter()
                    .zip(&chosen)
                    .map(|(&v, &idx)| (v, subs[idx].rows.clone()))
                    .collect(),
            };
            validate_configuration(shape, d, &config)?;
            found.push(config);
        }
        chosen[slot] = usize::MAX;
    }

    Ok((count, if list { Some(found) } else { None }))
}

/// Counts special-fiber points of the GL_n chain model with dim F_v = d.
pub fn enumerate_gl_points(
    shape: &ChainShape,
    d: usize,
    q: usize,
    list: bool,
) -> Result<(u64, Option<Vec<ChainConfiguration>>)> {
    if shape.symplectic {
        return Err(Error::validation("GL enumeration on a symplectic shape"));
    }
    if d > shape.n {
        return Err(Error::validation("subspace dimension exceeds ambient rank"));
    }
    enumerate(shape, d, q, list)
}

/// Counts polarized special-fiber points of the GSp_n chain model
/// (n = 2g, dim F_v = g forced by self-duality).
pub fn enumerate_gsp_points(
    shape: &ChainShape,
    q: usize,
    list: bool,
) -> Result<(u64, Option<Vec<ChainConfiguration>>)> {
    if !shape.symplectic {
        return Err(Error::validation(
            "GSp enumeration on a non-symplectic shape",
        ));
    }
    enumerate(shape, shape.n / 2, q, list)
}

/// Outcome of the geometric-vs-combinatorial cross-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCompareReport {
    pub geometric: u64,
    pub predicted: i64,
    pub poly: QPoly,
    pub matched: bool,
}

/// Node index of a chain vertex (orbit) in the simple-generator indexing of
/// the Iwahori-Weyl group: vertex 0 is the affine node; GL vertex v >= 1 is
/// finite node v-1; GSp vertex g is the long finite end, and the pair
/// {v, n-v} is finite node v-1.
fn parahoric_of_shape(shape: &ChainShape, num_finite: usize) -> ParahoricSubgroup {
    let mut gens = Vec::new();
    if shape.symplectic {
        let g = shape.n / 2;
        if !shape.vertices.contains(&0) {
            gens.push(num_finite); // affine node
        }
        if !shape.vertices.contains(&g) {
            gens.push(num_finite - 1); // long finite end
        }
        for v in 1..g {
            if !shape.vertices.contains(&v) {
                gens.push(v - 1);
            }
        }
    } else {
        for v in 0..shape.n {
            if !shape.vertices.contains(&v) {
                gens.push(if v == 0 { num_finite } else { v - 1 });
            }
        }
    }
    ParahoricSubgroup::new(gens)
}

/// Enumerates the chain model at q and compares with the cell-count
/// polynomial of the admissible set at the matching parahoric level.
pub fn compare_with_admissible(
    shape: &ChainShape,
    d: usize,
    q: usize,
) -> Result<ChainCompareReport> {
    let (geometric, mu, family) = if shape.symplectic {
        let g = shape.n / 2;
        let (count, _) = enumerate_gsp_points(shape, q, false)?;
        let mut mu = vec![1i64; g + 1];
        mu[g] = 1;
        (count, mu, Family::Gsp)
    } else {
        if d > shape.n {
            return Err(Error::validation("subspace dimension exceeds ambient rank"));
        }
        let (count, _) = enumerate_gl_points(shape, d, q, false)?;
        let mut mu = vec![0i64; shape.n];
        for slot in mu.iter_mut().take(d) {
            *slot = 1;
        }
        (count, mu, Family::Gl)
    };
    let rd = build_root_datum(&GroupSpec::new(family, shape.n))?;
    let aut = pinned_identity(&rd);
    let group = make_iwahori_weyl(&rd, &aut, Caps::default())?;
    let p = parahoric_of_shape(shape, group.num_finite_simple());
    let poly = point_count_poly(&group, &mu, &p)?;
    let predicted = poly.eval(q as i64);
    Ok(ChainCompareReport {
        matched: geometric as i64 == predicted,
        geometric,
        predicted,
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(gf: &Gf, a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
        let n = a.len();
        let mut out = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i][j] = gf.add(out[i][j], gf.mul(a[i][k], b[k][j]));
                }
            }
        }
        out
    }

    #[test]
    fn field_tables_satisfy_axioms() {
        for q in [2usize, 3, 4, 5] {
            let gf = Gf::new(q).unwrap();
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    assert_eq!(gf.add(a, b), gf.add(b, a));
                    assert_eq!(gf.mul(a, b), gf.mul(b, a));
                    assert_eq!(gf.sub(gf.add(a, b), b), a);
                    for c in 0..q as u8 {
                        assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
                        assert_eq!(gf.mul(gf.mul(a, b), c), gf.mul(a, gf.mul(b, c)));
                    }
                }
                if a != 0 {
                    assert_eq!(gf.mul(a, gf.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2usize, 3, 4] {
            let gf = Gf::new(q).unwrap();
            for n in 1..=4 {
                for d in 0..=n {
                    let subs = subspaces(&gf, n, d);
                    assert_eq!(
                        subs.len() as u64,
                        gaussian_binomial(n, d, q as u64),
                        "{n} {d} {q}"
                    );
                    // All distinct and canonical.
                    let mut sorted = subs.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), subs.len());
                    for s in &subs {
                        assert_eq!(rref(&gf, &s.rows), *s);
                    }
                }
            }
        }
    }

    #[test]
    fn transitions_have_right_coranks_and_compose_to_zero() {
        let gf = Gf::new(2).unwrap();
        // n = 2 maximal: two rank-1 matrices with zero product.
        let shape = ChainShape::maximal(2, false).unwrap();
        let ts = standard_transitions(&shape);
        assert_eq!(ts.len(), 2);
        for t in &ts {
            let rank: usize = (0..2).map(|k| t[k][k] as usize).sum();
            assert_eq!(rank, 1);
        }
        assert!(mat_mul(&gf, &ts[0], &ts[1])
            .iter()
            .flatten()
            .all(|&x| x == 0));

        // Single lattice: the zero map.
        let single = ChainShape::single(2, false).unwrap();
        let ts = standard_transitions(&single);
        assert_eq!(ts.len(), 1);
        assert!(ts[0].iter().flatten().all(|&x| x == 0));

        // n = 3 maximal: three corank-1 maps, triple product zero.
        let shape3 = ChainShape::maximal(3, false).unwrap();
        let ts = standard_transitions(&shape3);
        assert_eq!(ts.len(), 3);
        for t in &ts {
            let rank: usize = (0..3).map(|k| t[k][k] as usize).sum();
            assert_eq!(rank, 2, "corank 1");
        }
        let prod = mat_mul(&gf, &mat_mul(&gf, &ts[0], &ts[1]), &ts[2]);
        assert!(prod.iter().flatten().all(|&x| x == 0));

        // Ranks of the quotients are consistent with the vertex gaps.
        assert_eq!(shape3.ranks(), vec![1, 1, 1]);
        assert_eq!(ChainShape::gl(4, vec![0, 2]).unwrap().ranks(), vec![2, 2]);
    }

    #[test]
    fn gl_projective_spaces() {
        // Single lattice, d = 1: projective space counts.
        for (n, q, expect) in [(2, 3, 4), (2, 2, 3), (3, 2, 7), (4, 2, 15), (3, 3, 13)] {
            let shape = ChainShape::single(n, false).unwrap();
            let (count, _) = enumerate_gl_points(&shape, 1, q, false).unwrap();
            assert_eq!(count, expect, "P^{} over F_{q}", n - 1);
        }
    }

    #[test]
    fn gl2_maximal_chain_counts() {
        let shape = ChainShape::maximal(2, false).unwrap();
        let (c2, _) = enumerate_gl_points(&shape, 1, 2, false).unwrap();
        assert_eq!(c2, 5);
        let (c3, _) = enumerate_gl_points(&shape, 1, 3, false).unwrap();
        assert_eq!(c3, 7);
        assert!(c2 < c3, "monotone in q");
    }

    #[test]
    fn gl3_maximal_chain_count() {
        let shape = ChainShape::maximal(3, false).unwrap();
        let (c, _) = enumerate_gl_points(&shape, 1, 2, false).unwrap();
        assert_eq!(c, 19);
        let (c3, _) = enumerate_gl_points(&shape, 1, 3, false).unwrap();
        assert_eq!(c3, 3 * 9 + 3 * 3 + 1);
    }

    #[test]
    fn listed_configurations_revalidate() {
        let shape = ChainShape::maximal(2, false).unwrap();
        let (count, configs) = enumerate_gl_points(&shape, 1, 2, true).unwrap();
        let configs = configs.unwrap();
        assert_eq!(configs.len() as u64, count);
        for c in &configs {
            validate_configuration(&shape, 1, c).unwrap();
        }
        // The standard configuration (span of leading basis vectors) shows up.
        let standard: Vec<Vec<u8>> = vec![vec![1, 0]];
        assert!(configs
            .iter()
            .any(|c| c.subspaces.iter().all(|(_, rows)| *rows == standard)));
    }

    #[test]
    fn gsp2_matches_gl2() {
        let shape = ChainShape::maximal(2, true).unwrap();
        let (c, _) = enumerate_gsp_points(&shape, 2, false).unwrap();
        assert_eq!(c, 5);
    }

    #[test]
    fn gsp4_single_lattice_counts_lagrangians() {
        let shape = ChainShape::single(4, true).unwrap();
        let (c2, _) = enumerate_gsp_points(&shape, 2, false).unwrap();
        assert_eq!(c2, 15);
        let (c3, _) = enumerate_gsp_points(&shape, 3, false).unwrap();
        assert_eq!(c3, 40);
    }

    #[test]
    fn gsp4_complete_chain_counts() {
        let shape = ChainShape::maximal(4, true).unwrap();
        let (c2, _) = enumerate_gsp_points(&shape, 2, false).unwrap();
        assert_eq!(c2, 59);
        let (c3, _) = enumerate_gsp_points(&shape, 3, false).unwrap();
        assert_eq!(c3, 163);
    }

    #[test]
    fn symplectic_configurations_revalidate() {
        let shape = ChainShape::gsp(4, vec![1, 3]).unwrap();
        assert_eq!(shape.duality_index(), Some(1));
        let (count, configs) = enumerate_gsp_points(&shape, 2, true).unwrap();
        let configs = configs.unwrap();
        assert_eq!(configs.len() as u64, count);
        assert!(count >= 1);
        for c in &configs {
            validate_configuration(&shape, 2, c).unwrap();
        }
    }

    #[test]
    fn rejects_bad_shapes_and_caps() {
        assert!(ChainShape::gl(3, vec![]).is_err());
        assert!(ChainShape::gl(3, vec![3]).is_err());
        assert!(ChainShape::gsp(3, vec![0]).is_err());
        assert!(
            ChainShape::gsp(4, vec![0, 1]).is_err(),
            "not closed under duality"
        );
        let big = ChainShape::single(5, false).unwrap();
        assert!(
            enumerate_gl_points(&big, 1, 2, false).is_err(),
            "ambient cap"
        );
        let shape = ChainShape::single(2, false).unwrap();
        assert!(
            enumerate_gl_points(&shape, 1, 7, false).is_err(),
            "field cap"
        );
    }

    #[test]
    fn compare_gl2_shapes() {
        for q in [2usize, 3] {
            for vertices in [vec![0], vec![1], vec![0, 1]] {
                let shape = ChainShape::gl(2, vertices.clone()).unwrap();
                let rep = compare_with_admissible(&shape, 1, q).unwrap();
                assert!(
                    rep.matched,
                    "GL2 {vertices:?} q={q}: {} vs {}",
                    rep.geometric, rep.predicted
                );
            }
        }
    }

    #[test]
    fn compare_gl3_all_shapes() {
        for d in [0usize, 1, 2, 3] {
            for vertices in [
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2],
            ] {
                let shape = ChainShape::gl(3, vertices.clone()).unwrap();
                let rep = compare_with_admissible(&shape, d, 2).unwrap();
                assert!(
                    rep.matched,
                    "GL3 {vertices:?} d={d}: {} vs {} ({})",
                    rep.geometric, rep.predicted, rep.poly
                );
            }
        }
    }

    #[test]
    fn compare_gl4_grassmannian() {
        let shape = ChainShape::single(4, false).unwrap();
        let rep = compare_with_admissible(&shape, 2, 2).unwrap();
        assert!(rep.matched);
        assert_eq!(rep.geometric, 35);
        let max = ChainShape::maximal(4, false).unwrap();
        let rep = compare_with_admissible(&max, 1, 2).unwrap();
        assert!(rep.matched, "{} vs {}", rep.geometric, rep.predicted);
        let rep2 = compare_with_admissible(&max, 2, 2).unwrap();
        assert!(rep2.matched, "{} vs {}", rep2.geometric, rep2.predicted);
    }

    #[test]
    fn compare_gsp_shapes() {
        for vertices in [
            vec![0],
            vec![2],
            vec![1, 3],
            vec![0, 2],
            vec![0, 1, 3],
            vec![0, 1, 2, 3],
        ] {
            let shape = ChainShape::gsp(4, vertices.clone()).unwrap();
            let rep = compare_with_admissible(&shape, 2, 2).unwrap();
            assert!(
                rep.matched,
                "GSp4 {vertices:?}: {} vs {} ({})",
                rep.geometric, rep.predicted, rep.poly
            );
        }
        let g1 = ChainShape::maximal(2, true).unwrap();
        let rep = compare_with_admissible(&g1, 1, 2).unwrap();
        assert!(rep.matched);
        assert_eq!(rep.geometric, 5);
    }

    #[test]
    fn compare_degenerate_mu() {
        // d = n: every F_v is the whole space; a single configuration.
        let shape = ChainShape::maximal(2, false).unwrap();
        let rep = compare_with_admissible(&shape, 2, 2).unwrap();
        assert!(rep.matched);
        assert_eq!(rep.geometric, 1);
        assert_eq!(rep.poly.coeffs, vec![1]);
    }
}
