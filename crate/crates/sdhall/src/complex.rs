//! Two-periodic complexes of quiver representations.
//!
//! A `Z/2`-graded complex is a pair of representations `M^0, M^1` with
//! representation morphisms `d0 : M^0 -> M^1` and `d1 : M^1 -> M^0`
//! composing to zero both ways.  The module provides:
//!
//! * constructors for the structural objects of the theory — stalks `C_X`
//!   (the object in degree one) and `C*_X` (degree zero), and the two
//!   contractible one-parameter families `K_X` (identity differential from
//!   degree zero) and `K*_X` (identity from degree one);
//! * shift (swap the degrees, negate the differentials), direct sums, and
//!   homology in both degrees;
//! * morphism spaces of complexes (degreewise representation morphisms
//!   commuting with the differentials);
//! * subcomplex scans and the extension cocycle scan: for an extension of
//!   complexes `0 -> M -> X -> L -> 0`, the unknowns are arrow
//!   perturbations `eta^0, eta^1` (one per arrow and degree) together with
//!   differential perturbations `eps^0, eps^1` (one per vertex and degree),
//!   subject to the linear conditions making the block middle a complex of
//!   representations.  Counting cocycles by the isomorphism class of their
//!   middle yields exact extension counts, cross-checkable against the
//!   subcomplex route;
//! * a classification registry for complexes, fingerprinted by component
//!   classes, differential ranks, homology classes and endomorphism
//!   dimension, with an explicit isomorphism search on collisions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fq::{checked_pow, enumerate_subspaces, FqMatrix, VectorIter};
use crate::quiver::Quiver;
use crate::rep::{sub_and_quotient, Budget, ClassId, RepContext, Representation};
use crate::scalar::Rational;

use num::bigint::BigInt;

// ---------------------------------------------------------------------------
// The complexes
// ---------------------------------------------------------------------------

/// A two-periodic complex `M^0 -> M^1 -> M^0` of representations.  Both
/// differentials are tuples of per-vertex matrices; `d0[i]` has shape
/// `M^1_i x M^0_i` and `d1[i]` has shape `M^0_i x M^1_i`.
#[derive(Clone, Debug)]
pub struct Z2Complex {
    m0: Representation,
    m1: Representation,
    d0: Vec<FqMatrix>,
    d1: Vec<FqMatrix>,
}

impl Z2Complex {
    pub fn new(
        m0: Representation,
        m1: Representation,
        d0: Vec<FqMatrix>,
        d1: Vec<FqMatrix>,
    ) -> Result<Self> {
        let quiver = m0.quiver().clone();
        let q = m0.q();
        let n = quiver.n();
        if d0.len() != n || d1.len() != n {
            return Err(Error::Incompatible(
                "one differential matrix per vertex is required".into(),
            ));
        }
        for i in 0..n {
            if d0[i].rows() != m1.dims()[i] || d0[i].cols() != m0.dims()[i] {
                return Err(Error::Incompatible(format!(
                    "degree-zero differential at vertex {i} has the wrong shape"
                )));
            }
            if d1[i].rows() != m0.dims()[i] || d1[i].cols() != m1.dims()[i] {
                return Err(Error::Incompatible(format!(
                    "degree-one differential at vertex {i} has the wrong shape"
                )));
            }
            if !d0[i].mul(&d1[i]).is_zero() || !d1[i].mul(&d0[i]).is_zero() {
                return Err(Error::Incompatible(format!(
                    "differentials at vertex {i} do not compose to zero"
                )));
            }
        }
        // both differentials must be representation morphisms
        for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
            let x0 = m0.mat(a);
            let x1 = m1.mat(a);
            if d0[t].mul(x0) != x1.mul(&d0[s]) {
                return Err(Error::Incompatible(format!(
                    "degree-zero differential does not intertwine arrow {a}"
                )));
            }
            if d1[t].mul(x1) != x0.mul(&d1[s]) {
                return Err(Error::Incompatible(format!(
                    "degree-one differential does not intertwine arrow {a}"
                )));
            }
        }
        let _ = q;
        Ok(Z2Complex { m0, m1, d0, d1 })
    }

    /// Stalk with `x` in degree one.
    pub fn stalk(x: Representation) -> Z2Complex {
        let quiver = x.quiver().clone();
        let q = x.q();
        let zero = Representation::zero(quiver.clone(), q);
        let d0: Vec<FqMatrix> = (0..quiver.n())
            .map(|i| FqMatrix::zero(q, x.dims()[i], 0))
            .collect();
        let d1: Vec<FqMatrix> = (0..quiver.n())
            .map(|i| FqMatrix::zero(q, 0, x.dims()[i]))
            .collect();
        Z2Complex {
            m0: zero,
            m1: x,
            d0,
            d1,
        }
    }

    /// Stalk with `x` in degree zero.
    pub fn costalk(x: Representation) -> Z2Complex {
        Z2Complex::stalk(x).shift()
    }

    /// Contractible complex with identity differential out of degree zero.
    pub fn acyclic(x: Representation) -> Z2Complex {
        let quiver = x.quiver().clone();
        let q = x.q();
        let d0: Vec<FqMatrix> = (0..quiver.n())
            .map(|i| FqMatrix::identity(q, x.dims()[i]))
            .collect();
        let d1: Vec<FqMatrix> = (0..quiver.n())
            .map(|i| FqMatrix::zero(q, x.dims()[i], x.dims()[i]))
            .collect();
        Z2Complex {
            m0: x.clone(),
            m1: x,
            d0,
            d1,
        }
    }

    /// Contractible complex with identity differential out of degree one.
    pub fn coacyclic(x: Representation) -> Z2Complex {
        Z2Complex::acyclic(x).shift()
    }

    /// Swap the degrees and negate both differentials.
    pub fn shift(&self) -> Z2Complex {
        Z2Complex {
            m0: self.m1.clone(),
            m1: self.m0.clone(),
            d0: self.d1.iter().map(|m| m.neg()).collect(),
            d1: self.d0.iter().map(|m| m.neg()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Z2Complex) -> Z2Complex {
        let q = self.q();
        let d0 = (0..self.quiver().n())
            .map(|i| {
                FqMatrix::block2x2(
                    &self.d0[i],
                    &FqMatrix::zero(q, self.m1.dims()[i], other.m0.dims()[i]),
                    &FqMatrix::zero(q, other.m1.dims()[i], self.m0.dims()[i]),
                    &other.d0[i],
                )
            })
            .collect();
        let d1 = (0..self.quiver().n())
            .map(|i| {
                FqMatrix::block2x2(
                    &self.d1[i],
                    &FqMatrix::zero(q, self.m0.dims()[i], other.m1.dims()[i]),
                    &FqMatrix::zero(q, other.m0.dims()[i], self.m1.dims()[i]),
                    &other.d1[i],
                )
            })
            .collect();
        Z2Complex {
            m0: self.m0.direct_sum(&other.m0),
            m1: self.m1.direct_sum(&other.m1),
            d0,
            d1,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.m0.quiver()
    }
    pub fn q(&self) -> u8 {
        self.m0.q()
    }
    pub fn m0(&self) -> &Representation {
        &self.m0
    }
    pub fn m1(&self) -> &Representation {
        &self.m1
    }
    pub fn d0(&self) -> &[FqMatrix] {
        &self.d0
    }
    pub fn d1(&self) -> &[FqMatrix] {
        &self.d1
    }

    pub fn total_dim(&self) -> usize {
        self.m0.total_dim() + self.m1.total_dim()
    }

    /// Dimension vectors of the two components (the image of the complex in
    /// the split Grothendieck data used by the multiplication twist).
    pub fn res(&self) -> (Vec<i64>, Vec<i64>) {
        (self.m0.dim_vec(), self.m1.dim_vec())
    }

    /// Per-vertex ranks of the degree-zero differential, as a signed vector.
    pub fn rank_vec_d0(&self) -> Vec<i64> {
        self.d0.iter().map(|m| m.rank() as i64).collect()
    }

    /// Per-vertex ranks of the degree-one differential.
    pub fn rank_vec_d1(&self) -> Vec<i64> {
        self.d1.iter().map(|m| m.rank() as i64).collect()
    }

    /// Homology in both degrees: `H^0 = ker d0 / im d1` and
    /// `H^1 = ker d1 / im d0`, each as a representation.
    pub fn homology(&self) -> (Representation, Representation) {
        let h0 = homology_at(&self.m0, &self.d0, &self.d1);
        let h1 = homology_at(&self.m1, &self.d1, &self.d0);
        (h0, h1)
    }

    /// Is this complex acyclic (both homologies vanish)?
    pub fn is_acyclic(&self) -> bool {
        let (h0, h1) = self.homology();
        h0.total_dim() == 0 && h1.total_dim() == 0
    }
}

/// Homology at the component `m` with outgoing differential `d_out` and
/// incoming differential `d_in`: `ker(d_out) / im(d_in)`.
fn homology_at(m: &Representation, d_out: &[FqMatrix], d_in: &[FqMatrix]) -> Representation {
    let ker_bases: Vec<FqMatrix> = d_out.iter().map(|d| d.kernel_basis()).collect();
    let (ker_rep, _) = sub_and_quotient(m, &ker_bases);
    // express the image of d_in inside the kernel coordinates
    let img_in_ker: Vec<FqMatrix> = (0..d_in.len())
        .map(|i| {
            let img = d_in[i].column_space_basis();
            let coords = ker_bases[i]
                .solve_matrix(&img)
                .expect("image of the incoming differential lies in the kernel");
            coords.column_space_basis()
        })
        .collect();
    let (_, h) = sub_and_quotient(&ker_rep, &img_in_ker);
    h
}

/// The pairing `<res L, res M>`: Euler form of the degreewise dimension
/// vectors, summed over the two degrees.  This is the exponent twisting the
/// multiplication.
pub fn res_pairing(quiver: &Quiver, l: &Z2Complex, m: &Z2Complex) -> i64 {
    let (l0, l1) = l.res();
    let (m0, m1) = m.res();
    quiver.euler_form(&l0, &m0) + quiver.euler_form(&l1, &m1)
}

// ---------------------------------------------------------------------------
// Linear systems over blocks of matrix unknowns
// ---------------------------------------------------------------------------

/// Layout of a tuple of matrix unknowns packed into one coordinate vector,
/// row-major inside each block.
pub struct BlockLayout {
    q: u8,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    total: usize,
}

impl BlockLayout {
    pub fn new(q: u8, shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        BlockLayout {
            q,
            shapes,
            offsets,
            total,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Unpack one coordinate vector into the matrix tuple.
    pub fn unpack(&self, coords: &[u8]) -> Vec<FqMatrix> {
        assert_eq!(coords.len(), self.total);
        self.shapes
            .iter()
            .zip(self.offsets.iter())
            .map(|(&(r, c), &off)| {
                FqMatrix::from_fn(self.q, r, c, |rr, cc| coords[off + rr * c + cc])
            })
            .collect()
    }
}

/// Accumulates homogeneous equations `sum_t (+/-) A_t U_{b_t} B_t = 0` over
/// the blocks of a [`BlockLayout`]; each `add` call appends one matrix
/// equation (entrywise rows).
pub struct EquationBuilder<'a> {
    layout: &'a BlockLayout,
    rows: Vec<Vec<u8>>,
}

impl<'a> EquationBuilder<'a> {
    pub fn new(layout: &'a BlockLayout) -> Self {
        EquationBuilder {
            layout,
            rows: Vec::new(),
        }
    }

    /// Append the equations of `sum_t sign_t * A_t * U_{block_t} * B_t = 0`,
    /// an `er x ec` matrix identity.
    pub fn add(&mut self, er: usize, ec: usize, terms: &[(&FqMatrix, usize, &FqMatrix, bool)]) {
        let q = self.layout.q as u16;
        let base = self.rows.len();
        for _ in 0..er * ec {
            self.rows.push(vec![0u8; self.layout.total]);
        }
        for &(a, blk, b, neg) in terms {
            let (ur, uc) = self.layout.shapes[blk];
            assert_eq!(a.rows(), er, "left factor rows");
            assert_eq!(a.cols(), ur, "left factor cols");
            assert_eq!(b.rows(), uc, "right factor rows");
            assert_eq!(b.cols(), ec, "right factor cols");
            let off = self.layout.offsets[blk];
            for p in 0..er {
                for s in 0..ec {
                    let row = &mut self.rows[base + p * ec + s];
                    for r in 0..ur {
                        let ap = a.get(p, r) as u16;
                        if ap == 0 {
                            continue;
                        }
                        for c in 0..uc {
                            let mut coef = (ap * b.get(c, s) as u16) % q;
                            if neg && coef != 0 {
                                coef = q - coef;
                            }
                            let idx = off + r * uc + c;
                            row[idx] = ((row[idx] as u16 + coef) % q) as u8;
                        }
                    }
                }
            }
        }
    }

    /// Solve the accumulated homogeneous system; returns the kernel as a
    /// list of unpacked matrix tuples (a basis of the solution space).
    pub fn kernel(&self) -> Vec<Vec<FqMatrix>> {
        let q = self.layout.q;
        let sys = if self.rows.is_empty() {
            FqMatrix::zero(q, 0, self.layout.total)
        } else {
            FqMatrix::from_fn(q, self.rows.len(), self.layout.total, |r, c| {
                self.rows[r][c]
            })
        };
        let ker = sys.kernel_basis();
        (0..ker.cols())
            .map(|k| {
                let coords: Vec<u8> = (0..self.layout.total).map(|r| ker.get(r, k)).collect();
                self.layout.unpack(&coords)
            })
            .collect()
    }
}

/// Linear combination of unpacked matrix tuples.
fn combine_tuples(
    q: u8,
    shapes: &[(usize, usize)],
    basis: &[Vec<FqMatrix>],
    coords: &[u8],
) -> Vec<FqMatrix> {
    let mut out: Vec<FqMatrix> = shapes
        .iter()
        .map(|&(r, c)| FqMatrix::zero(q, r, c))
        .collect();
    for (k, tuple) in basis.iter().enumerate() {
        if coords[k] == 0 {
            continue;
        }
        for (i, m) in tuple.iter().enumerate() {
            out[i] = out[i].add(&m.scale(coords[k]));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Morphisms of complexes
// ---------------------------------------------------------------------------

/// Basis of the space of complex morphisms `L -> M`: per-vertex pairs
/// `(f0_i, f1_i)` that intertwine the arrows degreewise and commute with both
/// differentials.  The tuple layout is all `f0` blocks then all `f1` blocks.
pub struct ComplexMorphisms {
    q: u8,
    shapes: Vec<(usize, usize)>,
    basis: Vec<Vec<FqMatrix>>,
    n: usize,
}

impl ComplexMorphisms {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Iterate all `q^dim` morphisms as `(f0, f1)` per-vertex tuples.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<FqMatrix>, Vec<FqMatrix>)> + '_ {
        VectorIter::new(self.q, self.dim()).map(move |coords| {
            let all = combine_tuples(self.q, &self.shapes, &self.basis, &coords);
            let f1 = all[self.n..].to_vec();
            let mut f0 = all;
            f0.truncate(self.n);
            (f0, f1)
        })
    }
}

/// Solve for all morphisms of complexes `L -> M`.
pub fn hom_space_cx(l: &Z2Complex, m: &Z2Complex) -> ComplexMorphisms {
    let quiver = l.quiver().clone();
    let q = l.q();
    let n = quiver.n();
    // blocks: f0_i (M0_i x L0_i) for all i, then f1_i (M1_i x L1_i)
    let mut shapes = Vec::with_capacity(2 * n);
    for i in 0..n {
        shapes.push((m.m0().dims()[i], l.m0().dims()[i]));
    }
    for i in 0..n {
        shapes.push((m.m1().dims()[i], l.m1().dims()[i]));
    }
    let layout = BlockLayout::new(q, shapes.clone());
    let mut eqs = EquationBuilder::new(&layout);
    // degreewise intertwining
    for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
        let (xl0, xm0) = (l.m0().mat(a), m.m0().mat(a));
        let it = FqMatrix::identity(q, m.m0().dims()[t]);
        let is = FqMatrix::identity(q, l.m0().dims()[s]);
        eqs.add(
            m.m0().dims()[t],
            l.m0().dims()[s],
            &[(&it, t, xl0, false), (xm0, s, &is, true)],
        );
        let (xl1, xm1) = (l.m1().mat(a), m.m1().mat(a));
        let it = FqMatrix::identity(q, m.m1().dims()[t]);
        let is = FqMatrix::identity(q, l.m1().dims()[s]);
        eqs.add(
            m.m1().dims()[t],
            l.m1().dims()[s],
            &[(&it, n + t, xl1, false), (xm1, n + s, &is, true)],
        );
    }
    // commutation with both differentials
    for i in 0..n {
        // f1_i d0_L,i = d0_M,i f0_i   (shape M1_i x L0_i)
        let im1 = FqMatrix::identity(q, m.m1().dims()[i]);
        let il0 = FqMatrix::identity(q, l.m0().dims()[i]);
        eqs.add(
            m.m1().dims()[i],
            l.m0().dims()[i],
            &[
                (&im1, n + i, &l.d0()[i], false),
                (&m.d0()[i], i, &il0, true),
            ],
        );
        // f0_i d1_L,i = d1_M,i f1_i   (shape M0_i x L1_i)
        let im0 = FqMatrix::identity(q, m.m0().dims()[i]);
        let il1 = FqMatrix::identity(q, l.m1().dims()[i]);
        eqs.add(
            m.m0().dims()[i],
            l.m1().dims()[i],
            &[
                (&im0, i, &l.d1()[i], false),
                (&m.d1()[i], n + i, &il1, true),
            ],
        );
    }
    ComplexMorphisms {
        q,
        shapes,
        basis: eqs.kernel(),
        n,
    }
}

pub fn hom_dim_cx(l: &Z2Complex, m: &Z2Complex) -> usize {
    hom_space_cx(l, m).dim()
}

// ---------------------------------------------------------------------------
// Extension cocycles
// ---------------------------------------------------------------------------

/// The space of extension cocycles for `0 -> M -> X -> L -> 0` (sub `M`,
/// quotient `L`).  Blocks: `eta0_a : L0_i -> M0_j` and `eta1_a : L1_i -> M1_j`
/// per arrow `a : i -> j`, then `eps0_i : L0_i -> M1_i` and
/// `eps1_i : L1_i -> M0_i` per vertex.  A cocycle assembles the block middle
/// complex; cohomologous cocycles (differing by the coboundary of arbitrary
/// degreewise splittings) give equivalent extensions.
pub struct CocycleSpace {
    q: u8,
    quiver: Arc<Quiver>,
    sub: Z2Complex,
    quot: Z2Complex,
    shapes: Vec<(usize, usize)>,
    basis: Vec<Vec<FqMatrix>>,
}

impl CocycleSpace {
    /// Solve the cocycle conditions for quotient `l` and sub `m`.
    pub fn new(l: &Z2Complex, m: &Z2Complex) -> CocycleSpace {
        let quiver = l.quiver().clone();
        let q = l.q();
        let n = quiver.n();
        let na = quiver.arrows().len();
        // block indices: eta0_a = a, eta1_a = na + a, eps0_i = 2na + i,
        // eps1_i = 2na + n + i
        let mut shapes = Vec::with_capacity(2 * na + 2 * n);
        for &(s, t) in quiver.arrows() {
            shapes.push((m.m0().dims()[t], l.m0().dims()[s]));
        }
        for &(s, t) in quiver.arrows() {
            shapes.push((m.m1().dims()[t], l.m1().dims()[s]));
        }
        for i in 0..n {
            shapes.push((m.m1().dims()[i], l.m0().dims()[i]));
        }
        for i in 0..n {
            shapes.push((m.m0().dims()[i], l.m1().dims()[i]));
        }
        let layout = BlockLayout::new(q, shapes.clone());
        let mut eqs = EquationBuilder::new(&layout);
        for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
            // degree-zero differential intertwines the perturbed arrow:
            // d0_M,t eta0_a + eps0_t x_L0,a - x_M1,a eps0_s - eta1_a d0_L,s = 0
            let er = m.m1().dims()[t];
            let ec = l.m0().dims()[s];
            let im = FqMatrix::identity(q, er);
            let ie = FqMatrix::identity(q, ec);
            eqs.add(
                er,
                ec,
                &[
                    (&m.d0()[t], a, &ie, false),
                    (&im, 2 * na + t, l.m0().mat(a), false),
                    (m.m1().mat(a), 2 * na + s, &ie, true),
                    (&im, na + a, &l.d0()[s], true),
                ],
            );
            // degree-one differential:
            // d1_M,t eta1_a + eps1_t x_L1,a - x_M0,a eps1_s - eta0_a d1_L,s = 0
            let er = m.m0().dims()[t];
            let ec = l.m1().dims()[s];
            let im = FqMatrix::identity(q, er);
            let ie = FqMatrix::identity(q, ec);
            eqs.add(
                er,
                ec,
                &[
                    (&m.d1()[t], na + a, &ie, false),
                    (&im, 2 * na + n + t, l.m1().mat(a), false),
                    (m.m0().mat(a), 2 * na + n + s, &ie, true),
                    (&im, a, &l.d1()[s], true),
                ],
            );
        }
        for i in 0..n {
            // squares vanish: d0_M,i eps1_i + eps0_i d1_L,i = 0 (M1_i x L1_i)
            let er = m.m1().dims()[i];
            let ec = l.m1().dims()[i];
            let im = FqMatrix::identity(q, er);
            eqs.add(
                er,
                ec,
                &[
                    (
                        &m.d0()[i],
                        2 * na + n + i,
                        &FqMatrix::identity(q, ec),
                        false,
                    ),
                    (&im, 2 * na + i, &l.d1()[i], false),
                ],
            );
            // d1_M,i eps0_i + eps1_i d0_L,i = 0 (M0_i x L0_i)
            let er = m.m0().dims()[i];
            let ec = l.m0().dims()[i];
            let im = FqMatrix::identity(q, er);
            eqs.add(
                er,
                ec,
                &[
                    (&m.d1()[i], 2 * na + i, &FqMatrix::identity(q, ec), false),
                    (&im, 2 * na + n + i, &l.d0()[i], false),
                ],
            );
        }
        CocycleSpace {
            q,
            quiver,
            sub: m.clone(),
            quot: l.clone(),
            shapes,
            basis: eqs.kernel(),
        }
    }

    /// Dimension of the cocycle space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the coboundary space: all degreewise splitting changes
    /// modulo the complex morphisms `quot -> sub`.
    pub fn coboundary_dim(&self) -> usize {
        let n = self.quiver.n();
        let mut c0 = 0usize;
        for i in 0..n {
            c0 += self.sub.m0().dims()[i] * self.quot.m0().dims()[i];
            c0 += self.sub.m1().dims()[i] * self.quot.m1().dims()[i];
        }
        c0 - hom_dim_cx(&self.quot, &self.sub)
    }

    /// Dimension of the extension group (cocycles modulo coboundaries).
    pub fn ext_dim(&self) -> usize {
        self.dim() - self.coboundary_dim()
    }

    /// The middle complex assembled from one cocycle tuple.
    pub fn middle(&self, cocycle: &[FqMatrix]) -> Z2Complex {
        let n = self.quiver.n();
        let na = self.quiver.arrows().len();
        let q = self.q;
        let (m, l) = (&self.sub, &self.quot);
        let mats0: Vec<FqMatrix> = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                FqMatrix::block2x2(
                    m.m0().mat(a),
                    &cocycle[a],
                    &FqMatrix::zero(q, l.m0().dims()[t], m.m0().dims()[s]),
                    l.m0().mat(a),
                )
            })
            .collect();
        let mats1: Vec<FqMatrix> = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                FqMatrix::block2x2(
                    m.m1().mat(a),
                    &cocycle[na + a],
                    &FqMatrix::zero(q, l.m1().dims()[t], m.m1().dims()[s]),
                    l.m1().mat(a),
                )
            })
            .collect();
        let dims0: Vec<usize> = (0..n)
            .map(|i| m.m0().dims()[i] + l.m0().dims()[i])
            .collect();
        let dims1: Vec<usize> = (0..n)
            .map(|i| m.m1().dims()[i] + l.m1().dims()[i])
            .collect();
        let x0 = Representation::new(self.quiver.clone(), q, dims0, mats0)
            .expect("block matrices have matching shapes");
        let x1 = Representation::new(self.quiver.clone(), q, dims1, mats1)
            .expect("block matrices have matching shapes");
        let d0: Vec<FqMatrix> = (0..n)
            .map(|i| {
                FqMatrix::block2x2(
                    &m.d0()[i],
                    &cocycle[2 * na + i],
                    &FqMatrix::zero(q, l.m1().dims()[i], m.m0().dims()[i]),
                    &l.d0()[i],
                )
            })
            .collect();
        let d1: Vec<FqMatrix> = (0..n)
            .map(|i| {
                FqMatrix::block2x2(
                    &m.d1()[i],
                    &cocycle[2 * na + n + i],
                    &FqMatrix::zero(q, l.m0().dims()[i], m.m1().dims()[i]),
                    &l.d1()[i],
                )
            })
            .collect();
        Z2Complex::new(x0, x1, d0, d1).expect("cocycle conditions make the middle a complex")
    }

    /// Iterate all cocycles in the space.
    pub fn iter(&self) -> impl Iterator<Item = Vec<FqMatrix>> + '_ {
        VectorIter::new(self.q, self.dim())
            .map(move |coords| combine_tuples(self.q, &self.shapes, &self.basis, &coords))
    }
}

// ---------------------------------------------------------------------------
// Classification of complexes
// ---------------------------------------------------------------------------

/// Stable handle to an isomorphism class of complexes in one
/// [`ComplexContext`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CxClassId(pub usize);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct CxFingerprint {
    m0_class: usize,
    m1_class: usize,
    d0_ranks: Vec<usize>,
    d1_ranks: Vec<usize>,
    h0_class: usize,
    h1_class: usize,
    end_dim: usize,
}

struct CxTables {
    classes: Vec<Arc<Z2Complex>>,
    fingerprints: Vec<CxFingerprint>,
    by_fp: HashMap<CxFingerprint, Vec<usize>>,
    hom_dims: HashMap<(usize, usize), usize>,
    auts: HashMap<usize, u128>,
    subcomplexes: HashMap<usize, Arc<Vec<(CxClassId, CxClassId)>>>,
    middle_scans: PairTable<(CxClassId, u64)>,
}

/// Memo table keyed by an (ordered) pair of class indexes, holding a
/// shared list per pair.
type PairTable<T> = HashMap<(usize, usize), Arc<Vec<T>>>;

/// Classification and counting context for complexes, sharing the
/// representation registry.
pub struct ComplexContext {
    reps: Arc<RepContext>,
    tables: Mutex<CxTables>,
}

impl ComplexContext {
    pub fn new(reps: Arc<RepContext>) -> Arc<Self> {
        Arc::new(ComplexContext {
            reps,
            tables: Mutex::new(CxTables {
                classes: Vec::new(),
                fingerprints: Vec::new(),
                by_fp: HashMap::new(),
                hom_dims: HashMap::new(),
                auts: HashMap::new(),
                subcomplexes: HashMap::new(),
                middle_scans: HashMap::new(),
            }),
        })
    }

    pub fn reps(&self) -> &Arc<RepContext> {
        &self.reps
    }

    fn budget(&self) -> &Budget {
        self.reps.budget()
    }

    fn fingerprint(&self, x: &Z2Complex) -> Result<CxFingerprint> {
        let (h0, h1) = x.homology();
        Ok(CxFingerprint {
            m0_class: self.reps.classify(x.m0())?.0,
            m1_class: self.reps.classify(x.m1())?.0,
            d0_ranks: x.d0().iter().map(|m| m.rank()).collect(),
            d1_ranks: x.d1().iter().map(|m| m.rank()).collect(),
            h0_class: self.reps.classify(&h0)?.0,
            h1_class: self.reps.classify(&h1)?.0,
            end_dim: hom_dim_cx(x, x),
        })
    }

    fn is_isomorphic_cx(&self, a: &Z2Complex, b: &Z2Complex) -> Result<bool> {
        if a.m0().dims() != b.m0().dims() || a.m1().dims() != b.m1().dims() {
            return Ok(false);
        }
        let space = hom_space_cx(a, b);
        let size = checked_pow(
            a.q(),
            space.dim() as u32,
            "complex isomorphism search",
            self.budget().max_scan,
        )?;
        let _ = size;
        let found = space.iter().any(|(f0, f1)| {
            f0.iter().all(|m| m.is_invertible()) && f1.iter().all(|m| m.is_invertible())
        });
        Ok(found)
    }

    /// Classify a complex, registering a new class when needed.
    pub fn classify_cx(&self, x: &Z2Complex) -> Result<CxClassId> {
        let fp = self.fingerprint(x)?;
        let candidates: Vec<usize> = {
            let tables = self.tables.lock().unwrap();
            tables.by_fp.get(&fp).cloned().unwrap_or_default()
        };
        for cand in candidates {
            let rep = self.tables.lock().unwrap().classes[cand].clone();
            if self.is_isomorphic_cx(x, &rep)? {
                return Ok(CxClassId(cand));
            }
        }
        let mut tables = self.tables.lock().unwrap();
        // a racing thread may have inserted the class meanwhile; re-check
        if let Some(bucket) = tables.by_fp.get(&fp) {
            let bucket = bucket.clone();
            drop(tables);
            for cand in bucket {
                let rep = self.tables.lock().unwrap().classes[cand].clone();
                if self.is_isomorphic_cx(x, &rep)? {
                    return Ok(CxClassId(cand));
                }
            }
            tables = self.tables.lock().unwrap();
        }
        let idx = tables.classes.len();
        tables.classes.push(Arc::new(x.clone()));
        tables.fingerprints.push(fp.clone());
        tables.by_fp.entry(fp).or_default().push(idx);
        Ok(CxClassId(idx))
    }

    pub fn class_rep_cx(&self, id: CxClassId) -> Arc<Z2Complex> {
        self.tables.lock().unwrap().classes[id.0].clone()
    }

    pub fn class_count(&self) -> usize {
        self.tables.lock().unwrap().classes.len()
    }

    /// Stalk class of a representation class (degree one).
    pub fn stalk_class(&self, a: ClassId) -> Result<CxClassId> {
        let rep = self.reps.class_rep(a);
        self.classify_cx(&Z2Complex::stalk((*rep).clone()))
    }

    /// Stalk class in degree zero.
    pub fn costalk_class(&self, a: ClassId) -> Result<CxClassId> {
        let rep = self.reps.class_rep(a);
        self.classify_cx(&Z2Complex::costalk((*rep).clone()))
    }

    /// Contractible class with identity out of degree zero.
    pub fn acyclic_class(&self, a: ClassId) -> Result<CxClassId> {
        let rep = self.reps.class_rep(a);
        self.classify_cx(&Z2Complex::acyclic((*rep).clone()))
    }

    /// Contractible class with identity out of degree one.
    pub fn coacyclic_class(&self, a: ClassId) -> Result<CxClassId> {
        let rep = self.reps.class_rep(a);
        self.classify_cx(&Z2Complex::coacyclic((*rep).clone()))
    }

    /// Memoised `dim Hom` between complex classes.
    pub fn hom_dim_classes(&self, a: CxClassId, b: CxClassId) -> usize {
        if let Some(&d) = self.tables.lock().unwrap().hom_dims.get(&(a.0, b.0)) {
            return d;
        }
        let (ra, rb) = (self.class_rep_cx(a), self.class_rep_cx(b));
        let d = hom_dim_cx(&ra, &rb);
        self.tables.lock().unwrap().hom_dims.insert((a.0, b.0), d);
        d
    }

    /// Memoised automorphism-group order of a complex class.
    pub fn aut_order_cx(&self, id: CxClassId) -> Result<u128> {
        if let Some(&a) = self.tables.lock().unwrap().auts.get(&id.0) {
            return Ok(a);
        }
        let x = self.class_rep_cx(id);
        let space = hom_space_cx(&x, &x);
        checked_pow(
            x.q(),
            space.dim() as u32,
            "complex automorphism count",
            self.budget().max_scan,
        )?;
        let count = space
            .iter()
            .filter(|(f0, f1)| {
                f0.iter().all(|m| m.is_invertible()) && f1.iter().all(|m| m.is_invertible())
            })
            .count() as u128;
        self.tables.lock().unwrap().auts.insert(id.0, count);
        Ok(count)
    }

    /// Memoised subcomplex scan: one `(sub class, quotient class)` entry per
    /// stable subspace tuple (stable under the arrows degreewise and under
    /// both differentials).
    pub fn subcomplexes(&self, id: CxClassId) -> Result<Arc<Vec<(CxClassId, CxClassId)>>> {
        if let Some(s) = self.tables.lock().unwrap().subcomplexes.get(&id.0) {
            return Ok(s.clone());
        }
        let x = self.class_rep_cx(id);
        let quiver = x.quiver().clone();
        let q = x.q();
        let n = quiver.n();
        // subspace lists per vertex and degree
        let lists0: Vec<Vec<FqMatrix>> = (0..n)
            .map(|i| enumerate_subspaces(q, x.m0().dims()[i]))
            .collect();
        let lists1: Vec<Vec<FqMatrix>> = (0..n)
            .map(|i| enumerate_subspaces(q, x.m1().dims()[i]))
            .collect();
        let mut total: u128 = 1;
        for l in lists0.iter().chain(lists1.iter()) {
            total = total.saturating_mul(l.len() as u128);
            if total > self.budget().max_subspace_tuples {
                return Err(Error::Budget {
                    what: "subcomplex scan",
                    needed: total,
                    budget: self.budget().max_subspace_tuples,
                });
            }
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; 2 * n];
        loop {
            let bases0: Vec<FqMatrix> = (0..n).map(|i| lists0[i][idx[i]].clone()).collect();
            let bases1: Vec<FqMatrix> = (0..n).map(|i| lists1[i][idx[n + i]].clone()).collect();
            let stable_arrows = quiver.arrows().iter().enumerate().all(|(a, &(s, t))| {
                bases0[t].spans(&x.m0().mat(a).mul(&bases0[s]))
                    && bases1[t].spans(&x.m1().mat(a).mul(&bases1[s]))
            });
            let stable_diff = (0..n).all(|i| {
                bases1[i].spans(&x.d0()[i].mul(&bases0[i]))
                    && bases0[i].spans(&x.d1()[i].mul(&bases1[i]))
            });
            if stable_arrows && stable_diff {
                let (sub0, quot0) = sub_and_quotient(x.m0(), &bases0);
                let (sub1, quot1) = sub_and_quotient(x.m1(), &bases1);
                // differentials of the subcomplex in the chosen bases
                let sub_d0: Vec<FqMatrix> = (0..n)
                    .map(|i| {
                        bases1[i]
                            .solve_matrix(&x.d0()[i].mul(&bases0[i]))
                            .expect("stable under d0")
                    })
                    .collect();
                let sub_d1: Vec<FqMatrix> = (0..n)
                    .map(|i| {
                        bases0[i]
                            .solve_matrix(&x.d1()[i].mul(&bases1[i]))
                            .expect("stable under d1")
                    })
                    .collect();
                let sub = Z2Complex::new(sub0, sub1, sub_d0, sub_d1)?;
                // quotient differentials: express d(complement) in
                // [basis | complement] coordinates, keep the complement block
                let comp0: Vec<FqMatrix> = bases0.iter().map(|b| b.complement_basis()).collect();
                let comp1: Vec<FqMatrix> = bases1.iter().map(|b| b.complement_basis()).collect();
                let quot_d0: Vec<FqMatrix> = (0..n)
                    .map(|i| {
                        let full = bases1[i].hconcat(&comp1[i]);
                        let sol = full
                            .solve_matrix(&x.d0()[i].mul(&comp0[i]))
                            .expect("full basis spans");
                        FqMatrix::from_fn(q, comp1[i].cols(), comp0[i].cols(), |r, c| {
                            sol.get(bases1[i].cols() + r, c)
                        })
                    })
                    .collect();
                let quot_d1: Vec<FqMatrix> = (0..n)
                    .map(|i| {
                        let full = bases0[i].hconcat(&comp0[i]);
                        let sol = full
                            .solve_matrix(&x.d1()[i].mul(&comp1[i]))
                            .expect("full basis spans");
                        FqMatrix::from_fn(q, comp0[i].cols(), comp1[i].cols(), |r, c| {
                            sol.get(bases0[i].cols() + r, c)
                        })
                    })
                    .collect();
                let quot = Z2Complex::new(quot0, quot1, quot_d0, quot_d1)?;
                out.push((self.classify_cx(&sub)?, self.classify_cx(&quot)?));
            }
            // odometer over 2n positions
            let mut t = 0;
            loop {
                if t == 2 * n {
                    break;
                }
                let cap = if t < n {
                    lists0[t].len()
                } else {
                    lists1[t - n].len()
                };
                idx[t] += 1;
                if idx[t] < cap {
                    break;
                }
                idx[t] = 0;
                t += 1;
            }
            if t == 2 * n {
                break;
            }
        }
        let out = Arc::new(out);
        self.tables
            .lock()
            .unwrap()
            .subcomplexes
            .insert(id.0, out.clone());
        Ok(out)
    }

    /// Hall number for complexes: subcomplexes of `z` isomorphic to `y` with
    /// quotient isomorphic to `x`.
    pub fn hall_number_cx(&self, x: CxClassId, y: CxClassId, z: CxClassId) -> Result<u64> {
        let subs = self.subcomplexes(z)?;
        Ok(subs.iter().filter(|&&(s, qt)| s == y && qt == x).count() as u64)
    }

    /// Extension count with fixed middle through the subcomplex route:
    /// `F_{X,Y}^Z |Hom(X,Y)| |Aut X| |Aut Y| / |Aut Z|`, forced integral.
    pub fn ext_count_cx(&self, x: CxClassId, y: CxClassId, z: CxClassId) -> Result<Rational> {
        let f = self.hall_number_cx(x, y, z)?;
        let hom = checked_pow(
            self.reps.q(),
            self.hom_dim_classes(x, y) as u32,
            "complex hom size",
            u128::MAX / 2,
        )?;
        let num = BigInt::from(f)
            * BigInt::from(hom)
            * BigInt::from(self.aut_order_cx(x)?)
            * BigInt::from(self.aut_order_cx(y)?);
        let den = BigInt::from(self.aut_order_cx(z)?);
        let value = Rational::new(num, den);
        if !value.is_integer() {
            return Err(Error::Arithmetic(format!(
                "complex extension count for middle class {} is not an integer: {value}",
                z.0
            )));
        }
        Ok(value)
    }

    /// Memoised middle-term scan: enumerate the extension cocycles for
    /// quotient `l` and sub `m`, classify each middle, and return raw cocycle
    /// counts per middle class (sorted by class id).  Divide by
    /// `q^coboundary_dim` for extension counts, or by
    /// `q^(coboundary_dim + hom_dim)` for Hall-product coefficients.
    pub fn middle_scan(&self, l: CxClassId, m: CxClassId) -> Result<Arc<Vec<(CxClassId, u64)>>> {
        if let Some(s) = self.tables.lock().unwrap().middle_scans.get(&(l.0, m.0)) {
            return Ok(s.clone());
        }
        let (lx, mx) = (self.class_rep_cx(l), self.class_rep_cx(m));
        let space = CocycleSpace::new(&lx, &mx);
        checked_pow(
            lx.q(),
            space.dim() as u32,
            "complex extension scan",
            self.budget().max_scan,
        )?;
        let mut counts: HashMap<CxClassId, u64> = HashMap::new();
        for cocycle in space.iter() {
            let mid = space.middle(&cocycle);
            *counts.entry(self.classify_cx(&mid)?).or_insert(0) += 1;
        }
        let mut out: Vec<(CxClassId, u64)> = counts.into_iter().collect();
        out.sort_by_key(|&(c, _)| c);
        let out = Arc::new(out);
        self.tables
            .lock()
            .unwrap()
            .middle_scans
            .insert((l.0, m.0), out.clone());
        Ok(out)
    }

    /// Dimension of the extension group of quotient `l` by sub `m`, by rank
    /// computation only (no enumeration).
    pub fn ext1_dim_cx(&self, l: CxClassId, m: CxClassId) -> usize {
        let (lx, mx) = (self.class_rep_cx(l), self.class_rep_cx(m));
        CocycleSpace::new(&lx, &mx).ext_dim()
    }

    /// All complexes with the given component dimension vectors: runs over
    /// the representation class tables for both degrees and all differential
    /// pairs, classifying every valid complex.  Returns the classes sorted.
    pub fn enumerate_complexes(&self, dims0: &[usize], dims1: &[usize]) -> Result<Vec<CxClassId>> {
        let q = self.reps.q();
        let table0 = self.reps.enumerate_reps(dims0)?;
        let table1 = self.reps.enumerate_reps(dims1)?;
        let mut found = std::collections::BTreeSet::new();
        for &(c0, _) in table0.iter() {
            for &(c1, _) in table1.iter() {
                let m0 = self.reps.class_rep(c0);
                let m1 = self.reps.class_rep(c1);
                // all per-vertex differential pairs, validated by new()
                let mut entries = 0usize;
                for i in 0..dims0.len() {
                    entries += 2 * dims0[i] * dims1[i];
                }
                checked_pow(
                    q,
                    entries as u32,
                    "complex enumeration",
                    self.budget().max_tuples,
                )?;
                for coords in VectorIter::new(q, entries) {
                    let mut pos = 0usize;
                    let mut d0 = Vec::with_capacity(dims0.len());
                    let mut d1 = Vec::with_capacity(dims0.len());
                    for i in 0..dims0.len() {
                        let m = FqMatrix::from_fn(q, dims1[i], dims0[i], |r, c| {
                            coords[pos + r * dims0[i] + c]
                        });
                        pos += dims1[i] * dims0[i];
                        d0.push(m);
                        let m = FqMatrix::from_fn(q, dims0[i], dims1[i], |r, c| {
                            coords[pos + r * dims1[i] + c]
                        });
                        pos += dims0[i] * dims1[i];
                        d1.push(m);
                    }
                    if let Ok(cx) = Z2Complex::new((*m0).clone(), (*m1).clone(), d0, d1) {
                        found.insert(self.classify_cx(&cx)?);
                    }
                }
            }
        }
        Ok(found.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::rep::Budget;

    fn jordan_setup(q: u8) -> (Arc<RepContext>, Arc<ComplexContext>) {
        let quiver = Arc::new(Quiver::loop_quiver(1));
        let reps = RepContext::new(quiver, q, true, Budget::default());
        let cxs = ComplexContext::new(reps.clone());
        (reps, cxs)
    }

    fn simple(reps: &Arc<RepContext>) -> Representation {
        Representation::simple(reps.quiver().clone(), reps.q(), 0, &[0]).unwrap()
    }

    fn jordan_block(reps: &Arc<RepContext>, n: usize) -> Representation {
        let q = reps.q();
        let m = FqMatrix::from_fn(q, n, n, |r, c| u8::from(c == r + 1));
        Representation::new(reps.quiver().clone(), q, vec![n], vec![m]).unwrap()
    }

    #[test]
    fn structural_complexes_and_shift() {
        let (reps, cxs) = jordan_setup(2);
        let s = simple(&reps);
        let k = Z2Complex::acyclic(s.clone());
        let kstar = Z2Complex::coacyclic(s.clone());
        assert!(k.is_acyclic());
        assert!(kstar.is_acyclic());
        let shifted = cxs.classify_cx(&k.shift()).unwrap();
        let direct = cxs.classify_cx(&kstar).unwrap();
        assert_eq!(shifted, direct);
        // shifting twice returns to the original class
        let c = Z2Complex::stalk(s.clone());
        let a = cxs.classify_cx(&c).unwrap();
        let b = cxs.classify_cx(&c.shift().shift()).unwrap();
        assert_eq!(a, b);
        // a stalk is not acyclic
        assert!(!c.is_acyclic());
    }

    #[test]
    fn homology_of_basic_complexes() {
        let (reps, _) = jordan_setup(2);
        let s = simple(&reps);
        let c = Z2Complex::stalk(s.clone());
        let (h0, h1) = c.homology();
        assert_eq!(h0.total_dim(), 0);
        assert_eq!(h1.total_dim(), 1);
        let k = Z2Complex::acyclic(s.clone());
        let (h0, h1) = k.homology();
        assert_eq!(h0.total_dim(), 0);
        assert_eq!(h1.total_dim(), 0);
        // J2 in both degrees, d0 = the loop matrix (a morphism since it
        // commutes with itself), d1 = 0
        let j2 = jordan_block(&reps, 2);
        let d0 = vec![j2.mat(0).clone()];
        let d1 = vec![FqMatrix::zero(2, 2, 2)];
        let m = Z2Complex::new(j2.clone(), j2.clone(), d0, d1).unwrap();
        let (h0, h1) = m.homology();
        assert_eq!(h0.total_dim(), 1);
        assert_eq!(h1.total_dim(), 1);
        assert_eq!(m.rank_vec_d0(), vec![1]);
        assert_eq!(m.rank_vec_d1(), vec![0]);
    }

    #[test]
    fn complex_hom_dimensions() {
        let (reps, _) = jordan_setup(2);
        let s = simple(&reps);
        let c = Z2Complex::stalk(s.clone());
        let cstar = Z2Complex::costalk(s.clone());
        let k = Z2Complex::acyclic(s.clone());
        let kstar = Z2Complex::coacyclic(s.clone());
        assert_eq!(hom_dim_cx(&c, &c), 1);
        assert_eq!(hom_dim_cx(&c, &cstar), 0);
        assert_eq!(hom_dim_cx(&cstar, &c), 0);
        assert_eq!(hom_dim_cx(&c, &k), 1);
        assert_eq!(hom_dim_cx(&k, &c), 0);
        assert_eq!(hom_dim_cx(&k, &cstar), 1);
        assert_eq!(hom_dim_cx(&k, &k), 1);
        assert_eq!(hom_dim_cx(&k, &kstar), 1);
        assert_eq!(hom_dim_cx(&kstar, &k), 1);
    }

    #[test]
    fn subcomplexes_of_the_contractibles() {
        let (reps, cxs) = jordan_setup(2);
        let s = simple(&reps);
        let kstar = cxs.classify_cx(&Z2Complex::coacyclic(s.clone())).unwrap();
        let c = cxs.classify_cx(&Z2Complex::stalk(s.clone())).unwrap();
        let cstar = cxs.classify_cx(&Z2Complex::costalk(s.clone())).unwrap();
        let subs = cxs.subcomplexes(kstar).unwrap();
        assert_eq!(subs.len(), 3);
        // the one-dimensional subcomplex sits in degree zero with quotient
        // the degree-one stalk
        assert_eq!(cxs.hall_number_cx(c, cstar, kstar).unwrap(), 1);
        assert_eq!(cxs.hall_number_cx(cstar, c, kstar).unwrap(), 0);
    }

    #[test]
    fn middle_scan_of_opposite_stalks() {
        for q in [2u8, 3] {
            let quiver = Arc::new(Quiver::loop_quiver(1));
            let reps = RepContext::new(quiver, q, true, Budget::default());
            let cxs = ComplexContext::new(reps.clone());
            let s = Representation::simple(reps.quiver().clone(), q, 0, &[0]).unwrap();
            let c = cxs.classify_cx(&Z2Complex::stalk(s.clone())).unwrap();
            let cstar = cxs.classify_cx(&Z2Complex::costalk(s.clone())).unwrap();
            let kstar = cxs.classify_cx(&Z2Complex::coacyclic(s.clone())).unwrap();
            let split = cxs
                .classify_cx(
                    &Z2Complex::stalk(s.clone()).direct_sum(&Z2Complex::costalk(s.clone())),
                )
                .unwrap();
            // quotient = degree-one stalk, sub = degree-zero stalk
            let scan = cxs.middle_scan(c, cstar).unwrap();
            let expected: Vec<(CxClassId, u64)> = {
                let mut v = vec![(split, 1), (kstar, (q - 1) as u64)];
                v.sort_by_key(|&(c, _)| c);
                v
            };
            assert_eq!(*scan, expected);
            // the other order yields the other contractible
            let k = cxs.classify_cx(&Z2Complex::acyclic(s.clone())).unwrap();
            let scan = cxs.middle_scan(cstar, c).unwrap();
            let expected: Vec<(CxClassId, u64)> = {
                let mut v = vec![(split, 1), (k, (q - 1) as u64)];
                v.sort_by_key(|&(c, _)| c);
                v
            };
            assert_eq!(*scan, expected);
        }
    }

    #[test]
    fn scan_and_subcomplex_routes_agree() {
        let (reps, cxs) = jordan_setup(2);
        let s = simple(&reps);
        let j2 = jordan_block(&reps, 2);
        let mut family = vec![
            Z2Complex::stalk(s.clone()),
            Z2Complex::costalk(s.clone()),
            Z2Complex::acyclic(s.clone()),
            Z2Complex::coacyclic(s.clone()),
            Z2Complex::stalk(j2.clone()),
        ];
        let ids: Vec<CxClassId> = family
            .drain(..)
            .map(|x| cxs.classify_cx(&x).unwrap())
            .collect();
        for &l in &ids {
            for &m in &ids {
                let lx = cxs.class_rep_cx(l);
                let mx = cxs.class_rep_cx(m);
                let space = CocycleSpace::new(&lx, &mx);
                let scan = cxs.middle_scan(l, m).unwrap();
                let b = 2u64.pow(space.coboundary_dim() as u32);
                let mut total = 0u64;
                for &(z, raw) in scan.iter() {
                    assert_eq!(raw % b, 0);
                    let via_scan = Rational::from_integer((raw / b).into());
                    let via_subs = cxs.ext_count_cx(l, m, z).unwrap();
                    assert_eq!(via_scan, via_subs, "middles of {l:?} by {m:?} at {z:?}");
                    total += raw / b;
                }
                assert_eq!(total, 2u64.pow(space.ext_dim() as u32));
            }
        }
    }

    #[test]
    fn automorphisms_of_split_stalk_pairs_factor() {
        let (reps, cxs) = jordan_setup(2);
        let s = simple(&reps);
        let j2 = jordan_block(&reps, 2);
        let pair = Z2Complex::stalk(j2.clone()).direct_sum(&Z2Complex::costalk(s.clone()));
        let id = cxs.classify_cx(&pair).unwrap();
        let a = reps.classify(&j2).unwrap();
        let b = reps.classify(&s).unwrap();
        assert_eq!(
            cxs.aut_order_cx(id).unwrap(),
            reps.aut_order(a).unwrap() * reps.aut_order(b).unwrap()
        );
        let pair2 = Z2Complex::stalk(s.clone()).direct_sum(&Z2Complex::costalk(s.clone()));
        let id2 = cxs.classify_cx(&pair2).unwrap();
        assert_eq!(cxs.aut_order_cx(id2).unwrap(), 1);
    }

    #[test]
    fn enumerating_one_dimensional_pairs() {
        let (_, cxs) = jordan_setup(2);
        // M0 = M1 = the simple: differentials (a, b) with ab = ba = 0 give
        // the split pair and the two contractibles
        let found = cxs.enumerate_complexes(&[1], &[1]).unwrap();
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn res_pairing_example() {
        let quiver = Arc::new(Quiver::loop_quiver(2));
        let reps = RepContext::new(quiver.clone(), 2, true, Budget::default());
        let s = Representation::simple(quiver.clone(), 2, 0, &[0, 0]).unwrap();
        let c = Z2Complex::stalk(s.clone());
        let k = Z2Complex::acyclic(s.clone());
        // <res C_S, res C_S> = <S, S> = 1 - 2 = -1 on the two-loop quiver
        assert_eq!(res_pairing(&quiver, &c, &c), -1);
        // <res K_S, res C_S> = <S, 0> + <S, S> = -1
        assert_eq!(res_pairing(&quiver, &k, &c), -1);
        let _ = reps;
    }
}
