//! Finite-dimensional `F_q`-representations of a quiver and their counting
//! invariants.
//!
//! A representation assigns to each vertex a space `F_q^{d_i}` and to each
//! arrow a matrix.  The module provides:
//!
//! * morphism spaces (kernel of the intertwining system), with kernels,
//!   images and cokernels of individual morphisms as sub/quotient
//!   representations;
//! * an isomorphism-classification registry ([`RepContext`]) handing out
//!   stable [`ClassId`]s, backed by invariant fingerprints (dimension
//!   vector, ranks of arrow words, endomorphism dimension) with an explicit
//!   isomorphism search on fingerprint collisions;
//! * automorphism-group orders, subobject scans, Hall numbers
//!   `F_{X,Y}^Z = #{ U <= Z : U iso Y, Z/U iso X }`, and the extension
//!   cocycle scan that counts middle terms of short exact sequences
//!   `0 -> Y -> Z -> X -> 0` directly;
//! * exhaustive orbit enumeration of all representations of a fixed
//!   dimension vector (for class tables and cross-checks).
//!
//! Nilpotent mode restricts the object class to nilpotent representations
//! (the iterated image chain under all arrows reaches zero); that class is
//! closed under subobjects, quotients and extensions, so every scan below
//! stays inside it automatically.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fq::{checked_pow, enumerate_subspaces, gl_order, FqMatrix, VectorIter};
use crate::quiver::Quiver;
use crate::scalar::Rational;

use num::bigint::BigInt;
use num::{One, Zero};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

// ---------------------------------------------------------------------------
// Budgets
// ---------------------------------------------------------------------------

/// Ceilings for the enumerative parts of the engine.  Every scan computes its
/// size up front and errors out (naming the size) instead of starting an
/// infeasible enumeration.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Elements visited by a single linear-space scan (morphism spaces,
    /// extension cocycle spaces).
    pub max_scan: u128,
    /// Raw matrix tuples visited when building a full class table for one
    /// dimension vector.
    pub max_tuples: u128,
    /// Subspace tuples visited by one subobject scan.
    pub max_subspace_tuples: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_scan: 1 << 22,
            max_tuples: 1 << 22,
            max_subspace_tuples: 1 << 22,
        }
    }
}

impl Budget {
    /// Budget scaled by a user-supplied ceiling (applied to all three knobs).
    pub fn with_ceiling(limit: u128) -> Self {
        Budget {
            max_scan: limit,
            max_tuples: limit,
            max_subspace_tuples: limit,
        }
    }
}

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

/// A representation of a quiver over `F_q`: one matrix per arrow, of shape
/// `dims[target] x dims[source]`.
#[derive(Clone, Debug)]
pub struct Representation {
    quiver: Arc<Quiver>,
    q: u8,
    dims: Vec<usize>,
    mats: Vec<FqMatrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, q: u8, dims: Vec<usize>, mats: Vec<FqMatrix>) -> Result<Self> {
        if dims.len() != quiver.n() || mats.len() != quiver.arrows().len() {
            return Err(Error::Incompatible(
                "dimension vector or matrix list does not match the quiver".into(),
            ));
        }
        for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
            if mats[a].rows() != dims[t] || mats[a].cols() != dims[s] || mats[a].q() != q {
                return Err(Error::Incompatible(format!(
                    "matrix for arrow {a} has shape {}x{} mod {}, expected {}x{} mod {q}",
                    mats[a].rows(),
                    mats[a].cols(),
                    mats[a].q(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(Representation {
            quiver,
            q,
            dims,
            mats,
        })
    }

    /// Zero representation of a given dimension vector.
    pub fn zero_of(quiver: Arc<Quiver>, q: u8, dims: Vec<usize>) -> Self {
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| FqMatrix::zero(q, dims[t], dims[s]))
            .collect();
        Representation {
            quiver,
            q,
            dims,
            mats,
        }
    }

    /// The zero representation.
    pub fn zero(quiver: Arc<Quiver>, q: u8) -> Self {
        let n = quiver.n();
        Self::zero_of(quiver, q, vec![0; n])
    }

    /// One-dimensional representation at vertex `i`; loops at `i` act by the
    /// given scalars (in input order of the loops), all other arrows vanish.
    pub fn simple(quiver: Arc<Quiver>, q: u8, i: usize, loop_scalars: &[u8]) -> Result<Self> {
        let g = quiver.loops_at(i);
        if loop_scalars.len() != g {
            return Err(Error::Config(format!(
                "vertex has {g} loops but {} scalars were given",
                loop_scalars.len()
            )));
        }
        let mut dims = vec![0usize; quiver.n()];
        dims[i] = 1;
        let mut next = 0usize;
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                if s == i && t == i {
                    let m = FqMatrix::from_rows(q, 1, 1, &[loop_scalars[next] % q]);
                    next += 1;
                    m
                } else {
                    FqMatrix::zero(q, dims[t], dims[s])
                }
            })
            .collect();
        Ok(Representation {
            quiver,
            q,
            dims,
            mats,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn q(&self) -> u8 {
        self.q
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn mat(&self, arrow: usize) -> &FqMatrix {
        &self.mats[arrow]
    }
    pub fn mats(&self) -> &[FqMatrix] {
        &self.mats
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Dimension vector as signed integers (for the Euler form).
    pub fn dim_vec(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    /// Direct sum, first summand in the leading block.
    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert!(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver);
        assert_eq!(self.q, other.q);
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(other.dims.iter())
            .map(|(a, b)| a + b)
            .collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                FqMatrix::block2x2(
                    &self.mats[a],
                    &FqMatrix::zero(self.q, self.dims[t], other.dims[s]),
                    &FqMatrix::zero(self.q, other.dims[t], self.dims[s]),
                    &other.mats[a],
                )
            })
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            q: self.q,
            dims,
            mats,
        }
    }

    /// Nilpotency via the iterated image chain: `U_1 = sum_a im(x_a)`,
    /// `U_{t+1} = sum_a x_a(U_t)`; nilpotent iff the chain reaches zero.
    /// (Summing the arrow matrices and testing matrix nilpotency would be
    /// wrong for several loops: two individually nilpotent loops can generate
    /// an infinite path algebra action.)
    pub fn is_nilpotent(&self) -> bool {
        let n = self.quiver.n();
        // current spanning sets per vertex (None = full space)
        let mut current: Vec<FqMatrix> = (0..n)
            .map(|i| FqMatrix::identity(self.q, self.dims[i]))
            .collect();
        for _ in 0..=self.total_dim() {
            if current.iter().all(|b| b.cols() == 0) {
                return true;
            }
            let mut next: Vec<FqMatrix> = (0..n)
                .map(|i| FqMatrix::zero(self.q, self.dims[i], 0))
                .collect();
            for (a, &(s, t)) in self.quiver.arrows().iter().enumerate() {
                let img = self.mats[a].mul(&current[s]);
                next[t] = next[t].hconcat(&img);
            }
            current = next.into_iter().map(|m| m.column_space_basis()).collect();
        }
        current.iter().all(|b| b.cols() == 0)
    }
}

// ---------------------------------------------------------------------------
// Morphism spaces
// ---------------------------------------------------------------------------

/// A basis of the space of morphisms `M -> N`, each basis element a tuple of
/// per-vertex matrices `f_i : M_i -> N_i` with `f_j x_a = y_a f_i` for every
/// arrow `a : i -> j`.
pub struct MorphismSpace {
    q: u8,
    shapes: Vec<(usize, usize)>, // (rows, cols) = (N_i, M_i) per vertex
    basis: Vec<Vec<FqMatrix>>,
}

impl MorphismSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FqMatrix>] {
        &self.basis
    }

    /// The morphism with the given coordinates in this basis.
    pub fn element(&self, coords: &[u8]) -> Vec<FqMatrix> {
        assert_eq!(coords.len(), self.basis.len());
        let mut out: Vec<FqMatrix> = self
            .shapes
            .iter()
            .map(|&(r, c)| FqMatrix::zero(self.q, r, c))
            .collect();
        for (k, b) in self.basis.iter().enumerate() {
            if coords[k] == 0 {
                continue;
            }
            for (i, m) in b.iter().enumerate() {
                out[i] = out[i].add(&m.scale(coords[k]));
            }
        }
        out
    }

    /// Iterate over every morphism in the space (`q^dim` of them), starting
    /// with zero.  The caller is responsible for budgeting.
    pub fn iter(&self) -> impl Iterator<Item = Vec<FqMatrix>> + '_ {
        VectorIter::new(self.q, self.dim()).map(|coords| self.element(&coords))
    }
}

/// Solve the intertwining system for `Hom(M, N)`.
pub fn hom_space(m: &Representation, n: &Representation) -> MorphismSpace {
    assert_eq!(m.q, n.q);
    let q = m.q;
    let nv = m.quiver.n();
    let shapes: Vec<(usize, usize)> = (0..nv).map(|i| (n.dims[i], m.dims[i])).collect();
    let offsets: Vec<usize> = {
        let mut off = vec![0usize; nv + 1];
        for i in 0..nv {
            off[i + 1] = off[i] + shapes[i].0 * shapes[i].1;
        }
        off
    };
    let unknowns = offsets[nv];
    // rows: for each arrow a: i -> j, a block of N_j x M_i equations
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (a, &(i, j)) in m.quiver.arrows().iter().enumerate() {
        let x = &m.mats[a]; // M_j x M_i
        let y = &n.mats[a]; // N_j x N_i
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut row = vec![0u8; unknowns];
                // + sum_s f_j[r, s] * x[s, c]
                for s in 0..m.dims[j] {
                    let idx = offsets[j] + r * shapes[j].1 + s;
                    row[idx] = (row[idx] + x.get(s, c)) % q;
                }
                // - sum_s y[r, s] * f_i[s, c]
                for s in 0..n.dims[i] {
                    let idx = offsets[i] + s * shapes[i].1 + c;
                    let neg = (q - y.get(r, s) % q) % q;
                    row[idx] = (row[idx] + neg) % q;
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        FqMatrix::zero(q, 0, unknowns)
    } else {
        FqMatrix::from_fn(q, rows.len(), unknowns, |r, c| rows[r][c])
    };
    let kernel = sys.kernel_basis();
    let mut basis = Vec::with_capacity(kernel.cols());
    for k in 0..kernel.cols() {
        let mut mats = Vec::with_capacity(nv);
        for i in 0..nv {
            let (r, c) = shapes[i];
            let mut f = FqMatrix::zero(q, r, c);
            for rr in 0..r {
                for cc in 0..c {
                    f.set(rr, cc, kernel.get(offsets[i] + rr * c + cc, k));
                }
            }
            mats.push(f);
        }
        basis.push(mats);
    }
    MorphismSpace { q, shapes, basis }
}

/// Dimension of `Hom(M, N)`.
pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    hom_space(m, n).dim()
}

/// Is the given per-vertex tuple an isomorphism (all components invertible)?
pub fn is_iso_tuple(f: &[FqMatrix]) -> bool {
    f.iter().all(|m| m.is_invertible())
}

// ---------------------------------------------------------------------------
// Sub/quotient constructions
// ---------------------------------------------------------------------------

/// Given per-vertex independent columns `bases[i]` spanning an arrow-stable
/// family of subspaces of `M`, build the subrepresentation on those bases and
/// the quotient representation on a deterministic complement.
pub fn sub_and_quotient(
    m: &Representation,
    bases: &[FqMatrix],
) -> (Representation, Representation) {
    let q = m.q;
    let sub_dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let comp: Vec<FqMatrix> = bases.iter().map(|b| b.complement_basis()).collect();
    let quot_dims: Vec<usize> = comp.iter().map(|c| c.cols()).collect();
    let mut sub_mats = Vec::new();
    let mut quot_mats = Vec::new();
    for (a, &(i, j)) in m.quiver.arrows().iter().enumerate() {
        let x = &m.mats[a];
        // subrepresentation: solve B_j * Y = x * B_i
        let y = bases[j]
            .solve_matrix(&x.mul(&bases[i]))
            .expect("subspaces are arrow-stable");
        sub_mats.push(y);
        // quotient: express x * C_i in the basis [B_j | C_j], keep the C_j block
        let full = bases[j].hconcat(&comp[j]);
        let sol = full
            .solve_matrix(&x.mul(&comp[i]))
            .expect("full basis spans the space");
        let z = FqMatrix::from_fn(q, quot_dims[j], quot_dims[i], |r, c| {
            sol.get(sub_dims[j] + r, c)
        });
        quot_mats.push(z);
    }
    let sub = Representation {
        quiver: m.quiver.clone(),
        q,
        dims: sub_dims,
        mats: sub_mats,
    };
    let quot = Representation {
        quiver: m.quiver.clone(),
        q,
        dims: quot_dims,
        mats: quot_mats,
    };
    (sub, quot)
}

/// Kernel of a morphism `f : M -> N` as a subrepresentation of `M`, returned
/// with its inclusion bases.
pub fn morphism_kernel(m: &Representation, f: &[FqMatrix]) -> (Representation, Vec<FqMatrix>) {
    let bases: Vec<FqMatrix> = f.iter().map(|fi| fi.kernel_basis()).collect();
    let (sub, _) = sub_and_quotient(m, &bases);
    (sub, bases)
}

/// Image of a morphism `f : M -> N` as a subrepresentation of `N`, with its
/// inclusion bases.
pub fn morphism_image(n: &Representation, f: &[FqMatrix]) -> (Representation, Vec<FqMatrix>) {
    let bases: Vec<FqMatrix> = f.iter().map(|fi| fi.column_space_basis()).collect();
    let (sub, _) = sub_and_quotient(n, &bases);
    (sub, bases)
}

/// Cokernel of a morphism `f : M -> N`.
pub fn morphism_cokernel(n: &Representation, f: &[FqMatrix]) -> Representation {
    let bases: Vec<FqMatrix> = f.iter().map(|fi| fi.column_space_basis()).collect();
    let (_, quot) = sub_and_quotient(n, &bases);
    quot
}

// ---------------------------------------------------------------------------
// Classification context
// ---------------------------------------------------------------------------

/// Stable handle to an isomorphism class inside one [`RepContext`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassId(pub usize);

/// Invariant fingerprint used to prefilter isomorphism tests: dimension
/// vector, ranks of all arrow-word products up to a fixed length (each rank
/// is invariant under base change at every vertex), and the endomorphism
/// dimension.  Equal classes have equal fingerprints; collisions of distinct
/// classes are resolved by the explicit isomorphism search.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fingerprint {
    dims: Vec<usize>,
    word_ranks: Vec<usize>,
    end_dim: usize,
}

impl Fingerprint {
    /// Compact deterministic rendering for reports.
    pub fn render(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        let ranks: Vec<String> = self.word_ranks.iter().map(|r| r.to_string()).collect();
        format!(
            "d[{}]r[{}]e{}",
            dims.join(","),
            ranks.join(","),
            self.end_dim
        )
    }
}

/// All composable arrow words of length `1..=cap`, in deterministic order.
fn arrow_words(quiver: &Quiver, cap: usize) -> Vec<Vec<usize>> {
    let arrows = quiver.arrows();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    for _ in 0..cap {
        out.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for w in &frontier {
            let last = *w.last().unwrap();
            let (_, t) = arrows[last];
            for (a, &(s, _)) in arrows.iter().enumerate() {
                if s == t {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out
}

/// Memo table keyed by an (ordered) pair of class indexes, holding a
/// shared list per pair.
type PairTable<T> = HashMap<(usize, usize), Arc<Vec<T>>>;

struct Tables {
    classes: Vec<Arc<Representation>>,
    fingerprints: Vec<Fingerprint>,
    by_fp: HashMap<Fingerprint, Vec<usize>>,
    hom_dims: HashMap<(usize, usize), usize>,
    auts: HashMap<usize, u128>,
    subobjects: HashMap<usize, Arc<Vec<(ClassId, ClassId)>>>,
    ext_scans: PairTable<(ClassId, u64)>,
    class_tables: HashMap<Vec<usize>, Arc<Vec<(ClassId, u128)>>>,
}

/// Classification and counting context for one `(quiver, q, object class)`
/// triple.  All counts are memoised here; the context is shared behind an
/// [`Arc`] and is safe to use from several threads.
pub struct RepContext {
    quiver: Arc<Quiver>,
    q: u8,
    nilpotent_only: bool,
    budget: Budget,
    word_list: Vec<Vec<usize>>,
    tables: Mutex<Tables>,
}

impl RepContext {
    pub fn new(quiver: Arc<Quiver>, q: u8, nilpotent_only: bool, budget: Budget) -> Arc<Self> {
        let word_list = arrow_words(&quiver, 4);
        let ctx = RepContext {
            quiver: quiver.clone(),
            q,
            nilpotent_only,
            budget,
            word_list,
            tables: Mutex::new(Tables {
                classes: Vec::new(),
                fingerprints: Vec::new(),
                by_fp: HashMap::new(),
                hom_dims: HashMap::new(),
                auts: HashMap::new(),
                subobjects: HashMap::new(),
                ext_scans: HashMap::new(),
                class_tables: HashMap::new(),
            }),
        };
        let ctx = Arc::new(ctx);
        // seed class 0 = the zero representation
        let zero = Representation::zero(quiver, q);
        let id = ctx
            .classify(&zero)
            .expect("zero representation is classifiable");
        debug_assert_eq!(id, ClassId(0));
        ctx
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn q(&self) -> u8 {
        self.q
    }
    pub fn nilpotent_only(&self) -> bool {
        self.nilpotent_only
    }
    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// The class of the zero representation.
    pub fn zero_class(&self) -> ClassId {
        ClassId(0)
    }

    fn fingerprint(&self, m: &Representation) -> Fingerprint {
        let mut word_ranks = Vec::with_capacity(self.word_list.len());
        for w in &self.word_list {
            // product x_{a_k} ... x_{a_1} applied left to right along the word
            let mut acc = m.mats[w[0]].clone();
            for &a in &w[1..] {
                acc = m.mats[a].mul(&acc);
            }
            word_ranks.push(acc.rank());
        }
        Fingerprint {
            dims: m.dims.clone(),
            word_ranks,
            end_dim: hom_dim(m, m),
        }
    }

    /// Explicit isomorphism search: scan `Hom(M, N)` for a tuple invertible
    /// at every vertex.
    fn is_isomorphic(&self, m: &Representation, n: &Representation) -> Result<bool> {
        if m.dims != n.dims {
            return Ok(false);
        }
        // deterministically rebuilt objects are often literally equal;
        // settle those without enumerating the morphism space
        if m.mats == n.mats {
            return Ok(true);
        }
        let space = hom_space(m, n);
        let h = space.dim();
        if h == 0 {
            // no nonzero morphisms at all: isomorphic only when both are zero
            return Ok(m.dims.iter().all(|&d| d == 0));
        }
        // A found isomorphism certifies the answer no matter how it was
        // found, and for isomorphic modules the invertible elements occupy
        // a constant fraction of the morphism space, so sampled linear
        // combinations of a Hom basis find one long before an exhaustive
        // scan becomes feasible.  A fixed seed keeps runs reproducible; a
        // miss here never flips the answer, it only falls through.
        let mut rng = SmallRng::seed_from_u64(0x5dee_a51a_11ce_0f01);
        let mut coords = vec![0u8; h];
        for _ in 0..64 * (h + 1) {
            for c in coords.iter_mut() {
                *c = rng.random_range(0..self.q);
            }
            if is_iso_tuple(&space.element(&coords)) {
                return Ok(true);
            }
        }
        let size = checked_pow(self.q, h as u32, "isomorphism search", self.budget.max_scan)?;
        if size > self.budget.max_scan {
            return Err(Error::Budget {
                what: "isomorphism search",
                needed: size,
                budget: self.budget.max_scan,
            });
        }
        let found = space.iter().any(|f| is_iso_tuple(&f));
        Ok(found)
    }

    /// Classify a representation, registering a new class when needed.
    pub fn classify(&self, m: &Representation) -> Result<ClassId> {
        debug_assert!(
            !self.nilpotent_only || m.is_nilpotent(),
            "non-nilpotent representation in a nilpotent-only context"
        );
        let fp = self.fingerprint(m);
        let mut tables = self.tables.lock().unwrap();
        if let Some(bucket) = tables.by_fp.get(&fp) {
            for &cand in bucket.clone().iter() {
                let rep = tables.classes[cand].clone();
                if self.is_isomorphic(m, &rep)? {
                    return Ok(ClassId(cand));
                }
            }
        }
        let idx = tables.classes.len();
        tables.classes.push(Arc::new(m.clone()));
        tables.fingerprints.push(fp.clone());
        tables.by_fp.entry(fp).or_default().push(idx);
        Ok(ClassId(idx))
    }

    /// Canonical representative of a class.
    pub fn class_rep(&self, id: ClassId) -> Arc<Representation> {
        self.tables.lock().unwrap().classes[id.0].clone()
    }

    /// Fingerprint of a class.
    pub fn class_fingerprint(&self, id: ClassId) -> Fingerprint {
        self.tables.lock().unwrap().fingerprints[id.0].clone()
    }

    /// Number of classes currently registered.
    pub fn class_count(&self) -> usize {
        self.tables.lock().unwrap().classes.len()
    }

    /// Dimension vector of a class.
    pub fn class_dims(&self, id: ClassId) -> Vec<usize> {
        self.class_rep(id).dims.to_vec()
    }

    /// Signed dimension vector of a class.
    pub fn class_dim_vec(&self, id: ClassId) -> Vec<i64> {
        self.class_rep(id).dim_vec()
    }

    /// Classify the one-dimensional representation at vertex `i` with the
    /// given loop scalars; in nilpotent mode the scalars must vanish.
    pub fn simple_class(&self, i: usize, loop_scalars: &[u8]) -> Result<ClassId> {
        if self.nilpotent_only && loop_scalars.iter().any(|&s| s % self.q != 0) {
            return Err(Error::Config(
                "nonzero loop scalar requested in nilpotent mode".into(),
            ));
        }
        let rep = Representation::simple(self.quiver.clone(), self.q, i, loop_scalars)?;
        self.classify(&rep)
    }

    /// Class of the `k`-fold direct sum of a class.
    pub fn power_class(&self, id: ClassId, k: usize) -> Result<ClassId> {
        let rep = self.class_rep(id);
        let mut acc = Representation::zero(self.quiver.clone(), self.q);
        for _ in 0..k {
            acc = acc.direct_sum(&rep);
        }
        self.classify(&acc)
    }

    /// Class of a direct sum.
    pub fn sum_class(&self, a: ClassId, b: ClassId) -> Result<ClassId> {
        let rep = self.class_rep(a).direct_sum(&self.class_rep(b));
        self.classify(&rep)
    }

    /// Memoised `dim Hom` between classes.
    pub fn hom_dim_classes(&self, a: ClassId, b: ClassId) -> usize {
        if let Some(&d) = self.tables.lock().unwrap().hom_dims.get(&(a.0, b.0)) {
            return d;
        }
        let (ra, rb) = (self.class_rep(a), self.class_rep(b));
        let d = hom_dim(&ra, &rb);
        self.tables.lock().unwrap().hom_dims.insert((a.0, b.0), d);
        d
    }

    /// `dim Ext^1(A, B) = dim Hom(A, B) - <dim A, dim B>`; the homological
    /// identity for quiver representations (projective dimension <= 1 holds
    /// in both object classes used here).  Panics if the value would be
    /// negative, which would signal a broken Euler form.
    pub fn ext1_dim(&self, a: ClassId, b: ClassId) -> usize {
        let h = self.hom_dim_classes(a, b) as i64;
        let e = self
            .quiver
            .euler_form(&self.class_dim_vec(a), &self.class_dim_vec(b));
        let x = h - e;
        assert!(x >= 0, "negative Ext dimension: hom {h}, euler {e}");
        x as usize
    }

    /// Memoised automorphism-group order of a class (scan of the
    /// endomorphism space, counting invertible tuples).
    pub fn aut_order(&self, id: ClassId) -> Result<u128> {
        if let Some(&a) = self.tables.lock().unwrap().auts.get(&id.0) {
            return Ok(a);
        }
        let rep = self.class_rep(id);
        let space = hom_space(&rep, &rep);
        let size = checked_pow(
            self.q,
            space.dim() as u32,
            "automorphism count",
            self.budget.max_scan,
        )?;
        if size > self.budget.max_scan {
            return Err(Error::Budget {
                what: "automorphism count",
                needed: size,
                budget: self.budget.max_scan,
            });
        }
        let count = space.iter().filter(|f| is_iso_tuple(f)).count() as u128;
        self.tables.lock().unwrap().auts.insert(id.0, count);
        Ok(count)
    }

    /// Memoised subobject scan: one `(sub class, quotient class)` entry per
    /// arrow-stable subspace tuple of the canonical representative.
    pub fn subobjects(&self, id: ClassId) -> Result<Arc<Vec<(ClassId, ClassId)>>> {
        if let Some(s) = self.tables.lock().unwrap().subobjects.get(&id.0) {
            return Ok(s.clone());
        }
        let rep = self.class_rep(id);
        let per_vertex: Vec<Vec<FqMatrix>> = rep
            .dims
            .iter()
            .map(|&d| enumerate_subspaces(self.q, d))
            .collect();
        let mut total: u128 = 1;
        for list in &per_vertex {
            total = total.saturating_mul(list.len() as u128);
            if total > self.budget.max_subspace_tuples {
                return Err(Error::Budget {
                    what: "subobject scan",
                    needed: total,
                    budget: self.budget.max_subspace_tuples,
                });
            }
        }
        let nv = self.quiver.n();
        let mut out = Vec::new();
        let mut idx = vec![0usize; nv];
        loop {
            let bases: Vec<FqMatrix> = (0..nv).map(|i| per_vertex[i][idx[i]].clone()).collect();
            // arrow stability
            let stable = self
                .quiver
                .arrows()
                .iter()
                .enumerate()
                .all(|(a, &(i, j))| bases[j].spans(&rep.mats[a].mul(&bases[i])));
            if stable {
                let (sub, quot) = sub_and_quotient(&rep, &bases);
                out.push((self.classify(&sub)?, self.classify(&quot)?));
            }
            // odometer
            let mut t = 0;
            loop {
                if t == nv {
                    break;
                }
                idx[t] += 1;
                if idx[t] < per_vertex[t].len() {
                    break;
                }
                idx[t] = 0;
                t += 1;
            }
            if t == nv {
                break;
            }
        }
        let out = Arc::new(out);
        self.tables
            .lock()
            .unwrap()
            .subobjects
            .insert(id.0, out.clone());
        Ok(out)
    }

    /// Hall number `F_{X,Y}^Z`: subobjects of `Z` isomorphic to `Y` with
    /// quotient isomorphic to `X`.
    pub fn hall_number(&self, x: ClassId, y: ClassId, z: ClassId) -> Result<u64> {
        let subs = self.subobjects(z)?;
        Ok(subs.iter().filter(|&&(s, qt)| s == y && qt == x).count() as u64)
    }

    /// Extension cocycle scan for `0 -> Y -> Z -> X -> 0`: enumerate the
    /// full space of arrow perturbations `eta_a : X_i -> Y_j` (one per arrow
    /// `a : i -> j`), assemble each block middle `[[y, eta], [0, x]]` and
    /// classify it.  Returns `(middle class, number of cocycles hitting it)`
    /// sorted by class id.  The number of extensions with a fixed middle `Z`
    /// is `count / |B|` with `|B| = q^(sum_i X_i Y_i - dim Hom(X, Y))`, and
    /// the Hall-product coefficient of `Z` is `count / q^(sum_i X_i Y_i)`.
    pub fn extension_scan(&self, x: ClassId, y: ClassId) -> Result<Arc<Vec<(ClassId, u64)>>> {
        if let Some(s) = self.tables.lock().unwrap().ext_scans.get(&(x.0, y.0)) {
            return Ok(s.clone());
        }
        let xr = self.class_rep(x);
        let yr = self.class_rep(y);
        let arrows = self.quiver.arrows();
        // eta entry layout: arrow by arrow, row-major
        let entry_counts: Vec<usize> = arrows
            .iter()
            .map(|&(s, t)| yr.dims[t] * xr.dims[s])
            .collect();
        let total_entries: usize = entry_counts.iter().sum();
        let size = checked_pow(
            self.q,
            total_entries as u32,
            "extension scan",
            self.budget.max_scan,
        )?;
        if size > self.budget.max_scan {
            return Err(Error::Budget {
                what: "extension scan",
                needed: size,
                budget: self.budget.max_scan,
            });
        }
        let mut counts: HashMap<ClassId, u64> = HashMap::new();
        for coords in VectorIter::new(self.q, total_entries) {
            let mut mats = Vec::with_capacity(arrows.len());
            let mut pos = 0usize;
            for (a, &(s, t)) in arrows.iter().enumerate() {
                let eta = FqMatrix::from_fn(self.q, yr.dims[t], xr.dims[s], |r, c| {
                    coords[pos + r * xr.dims[s] + c]
                });
                pos += entry_counts[a];
                mats.push(FqMatrix::block2x2(
                    &yr.mats[a],
                    &eta,
                    &FqMatrix::zero(self.q, xr.dims[t], yr.dims[s]),
                    &xr.mats[a],
                ));
            }
            let dims: Vec<usize> = (0..self.quiver.n())
                .map(|i| yr.dims[i] + xr.dims[i])
                .collect();
            let mid = Representation::new(self.quiver.clone(), self.q, dims, mats)?;
            *counts.entry(self.classify(&mid)?).or_insert(0) += 1;
        }
        let mut out: Vec<(ClassId, u64)> = counts.into_iter().collect();
        out.sort_by_key(|&(c, _)| c);
        let out = Arc::new(out);
        self.tables
            .lock()
            .unwrap()
            .ext_scans
            .insert((x.0, y.0), out.clone());
        Ok(out)
    }

    /// `|Ext^1(X, Y)_Z|` — the number of extension classes with middle `Z` —
    /// through the subobject route: `F_{X,Y}^Z |Hom(X,Y)| |Aut X| |Aut Y| / |Aut Z|`.
    /// The value is forced to be a non-negative integer; a fractional result
    /// would expose an inconsistency between the counting routes.
    pub fn ext_count(&self, x: ClassId, y: ClassId, z: ClassId) -> Result<Rational> {
        let f = self.hall_number(x, y, z)?;
        let hom = checked_pow(
            self.q,
            self.hom_dim_classes(x, y) as u32,
            "hom size",
            u128::MAX / 2,
        )?;
        let num = BigInt::from(f)
            * BigInt::from(hom)
            * BigInt::from(self.aut_order(x)?)
            * BigInt::from(self.aut_order(y)?);
        let den = BigInt::from(self.aut_order(z)?);
        let value = Rational::new(num, den);
        if !value.is_integer() {
            return Err(Error::Arithmetic(format!(
                "extension count for middle class {} is not an integer: {value}",
                z.0
            )));
        }
        Ok(value)
    }

    /// Full class table for one dimension vector: orbits of the matrix-tuple
    /// space under base change at every vertex, as `(class, orbit size)` in
    /// ascending order of the minimal tuple encoding.  In nilpotent mode the
    /// non-nilpotent orbits are dropped (their sizes are still counted
    /// internally, so the returned classes are exactly the object class).
    pub fn enumerate_reps(&self, dims: &[usize]) -> Result<Arc<Vec<(ClassId, u128)>>> {
        let key = dims.to_vec();
        if let Some(t) = self.tables.lock().unwrap().class_tables.get(&key) {
            return Ok(t.clone());
        }
        let orbits = self.enumerate_orbits_raw(dims)?;
        let mut out = Vec::new();
        for (rep, size) in orbits {
            if self.nilpotent_only && !rep.is_nilpotent() {
                continue;
            }
            out.push((self.classify(&rep)?, size));
        }
        let out = Arc::new(out);
        self.tables
            .lock()
            .unwrap()
            .class_tables
            .insert(key, out.clone());
        Ok(out)
    }

    /// Orbit decomposition of the full matrix-tuple space for `dims`,
    /// ignoring the nilpotency filter.  Exposed for counting cross-checks:
    /// the orbit sizes always sum to the number of tuples, and each orbit
    /// size times the automorphism order equals the order of the acting
    /// group.
    pub fn enumerate_orbits_raw(&self, dims: &[usize]) -> Result<Vec<(Representation, u128)>> {
        assert_eq!(dims.len(), self.quiver.n());
        let arrows = self.quiver.arrows();
        let entry_counts: Vec<usize> = arrows.iter().map(|&(s, t)| dims[t] * dims[s]).collect();
        let total_entries: usize = entry_counts.iter().sum();
        let size = checked_pow(
            self.q,
            total_entries as u32,
            "class-table enumeration",
            self.budget.max_tuples,
        )?;
        if size > self.budget.max_tuples {
            return Err(Error::Budget {
                what: "class-table enumeration",
                needed: size,
                budget: self.budget.max_tuples,
            });
        }
        let q = self.q;
        let size = size as u64;
        // generator list per vertex: (vertex, g, g^-1)
        let mut gens: Vec<(usize, FqMatrix, FqMatrix)> = Vec::new();
        for (v, &d) in dims.iter().enumerate() {
            for g in gl_generators(q, d) {
                let gi = g.inverse().expect("generators are invertible");
                gens.push((v, g, gi));
            }
        }
        let decode = |mut idx: u64| -> Vec<FqMatrix> {
            let mut mats = Vec::with_capacity(arrows.len());
            for (a, &(s, t)) in arrows.iter().enumerate() {
                let mut m = FqMatrix::zero(q, dims[t], dims[s]);
                for r in 0..dims[t] {
                    for c in 0..dims[s] {
                        m.set(r, c, (idx % q as u64) as u8);
                        idx /= q as u64;
                    }
                }
                let _ = a;
                mats.push(m);
            }
            mats
        };
        let encode = |mats: &[FqMatrix]| -> u64 {
            let mut idx: u64 = 0;
            let mut mult: u64 = 1;
            for (a, &(s, t)) in arrows.iter().enumerate() {
                for r in 0..dims[t] {
                    for c in 0..dims[s] {
                        idx += mats[a].get(r, c) as u64 * mult;
                        mult *= q as u64;
                    }
                }
            }
            idx
        };
        let mut visited = vec![false; size as usize];
        let mut orbits = Vec::new();
        for seed in 0..size {
            if visited[seed as usize] {
                continue;
            }
            visited[seed as usize] = true;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(seed);
            let mut orbit_size: u128 = 0;
            while let Some(cur) = queue.pop_front() {
                orbit_size += 1;
                let mats = decode(cur);
                for (v, g, gi) in &gens {
                    let mut next = mats.clone();
                    for (a, &(s, t)) in arrows.iter().enumerate() {
                        if t == *v {
                            next[a] = g.mul(&next[a]);
                        }
                        if s == *v {
                            next[a] = next[a].mul(gi);
                        }
                    }
                    let code = encode(&next);
                    if !visited[code as usize] {
                        visited[code as usize] = true;
                        queue.push_back(code);
                    }
                }
            }
            let rep = Representation::new(self.quiver.clone(), q, dims.to_vec(), decode(seed))?;
            orbits.push((rep, orbit_size));
        }
        Ok(orbits)
    }

    /// Order of the base-change group `prod_i GL(d_i, F_q)`.
    pub fn base_change_order(&self, dims: &[usize]) -> u128 {
        dims.iter().map(|&d| gl_order(self.q, d)).product()
    }

    /// Deterministic class description for reports: fingerprint text.
    pub fn describe(&self, id: ClassId) -> String {
        self.class_fingerprint(id).render()
    }

    /// Whether the representative of a class is nilpotent.
    pub fn class_is_nilpotent(&self, id: ClassId) -> bool {
        self.class_rep(id).is_nilpotent()
    }
}

/// A small generating set of `GL(d, F_q)`: all transvections `I + E_rs` and,
/// for `q > 2`, one diagonal scaling by a primitive element.
fn gl_generators(q: u8, d: usize) -> Vec<FqMatrix> {
    let mut gens = Vec::new();
    if d == 0 {
        return gens;
    }
    for r in 0..d {
        for s in 0..d {
            if r != s {
                let mut m = FqMatrix::identity(q, d);
                m.set(r, s, 1);
                gens.push(m);
            }
        }
    }
    if q > 2 {
        let gamma = primitive_element(q);
        let mut m = FqMatrix::identity(q, d);
        m.set(0, 0, gamma);
        gens.push(m);
    }
    gens
}

/// A primitive element of `F_q^x` for the small primes in scope.
fn primitive_element(q: u8) -> u8 {
    match q {
        2 => 1,
        3 => 2,
        5 => 2,
        7 => 3,
        _ => panic!("unsupported field size {q}"),
    }
}

/// `q^n` as an exact rational.
pub fn q_int_pow(q: u8, n: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= Rational::from_integer(BigInt::from(q));
    }
    acc
}

/// Zero-test helper for rationals.
pub fn rational_is_zero(r: &Rational) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn jordan() -> Arc<Quiver> {
        Arc::new(Quiver::loop_quiver(1))
    }

    fn two_loop() -> Arc<Quiver> {
        Arc::new(Quiver::loop_quiver(2))
    }

    fn ctx(quiver: Arc<Quiver>, q: u8, nilpotent: bool) -> Arc<RepContext> {
        RepContext::new(quiver, q, nilpotent, Budget::default())
    }

    /// Nilpotent Jordan-block representation of size `n` (regular at size n).
    fn jordan_block(quiver: &Arc<Quiver>, q: u8, n: usize) -> Representation {
        let m = FqMatrix::from_fn(q, n, n, |r, c| u8::from(c == r + 1));
        Representation::new(quiver.clone(), q, vec![n], vec![m]).unwrap()
    }

    #[test]
    fn nilpotency_uses_the_image_chain() {
        let j = jordan();
        assert!(jordan_block(&j, 2, 2).is_nilpotent());
        let one = Representation::new(
            j.clone(),
            2,
            vec![1],
            vec![FqMatrix::from_rows(2, 1, 1, &[1])],
        )
        .unwrap();
        assert!(!one.is_nilpotent());
        // two individually nilpotent loops that generate everything
        let t = two_loop();
        let x = FqMatrix::from_rows(2, 2, 2, &[0, 1, 0, 0]);
        let y = FqMatrix::from_rows(2, 2, 2, &[0, 0, 1, 0]);
        let m = Representation::new(t.clone(), 2, vec![2], vec![x.clone(), y]).unwrap();
        assert!(!m.is_nilpotent());
        let zero2 = FqMatrix::zero(2, 2, 2);
        let m2 = Representation::new(t, 2, vec![2], vec![x, zero2]).unwrap();
        assert!(m2.is_nilpotent());
    }

    #[test]
    fn hom_dimensions_on_jordan() {
        let j = jordan();
        let q = 2;
        let s = Representation::simple(j.clone(), q, 0, &[0]).unwrap();
        let j2 = jordan_block(&j, q, 2);
        assert_eq!(hom_dim(&s, &s), 1);
        assert_eq!(hom_dim(&s, &j2), 1);
        assert_eq!(hom_dim(&j2, &s), 1);
        assert_eq!(hom_dim(&j2, &j2), 2);
        let s2 = s.direct_sum(&s);
        assert_eq!(hom_dim(&s2, &s2), 4);
    }

    #[test]
    fn ext_dims_from_euler_form() {
        let c = ctx(jordan(), 2, true);
        let s = c.simple_class(0, &[0]).unwrap();
        let j2 = c.classify(&jordan_block(c.quiver(), 2, 2)).unwrap();
        assert_eq!(c.ext1_dim(s, s), 1);
        assert_eq!(c.ext1_dim(j2, j2), 2);
        assert_eq!(c.ext1_dim(s, j2), 1);
    }

    #[test]
    fn classification_distinguishes_loop_scalars() {
        let c = ctx(jordan(), 3, false);
        let mk = |lambda: u8| {
            Representation::new(
                c.quiver().clone(),
                3,
                vec![1],
                vec![FqMatrix::from_rows(3, 1, 1, &[lambda])],
            )
            .unwrap()
        };
        let c0 = c.classify(&mk(0)).unwrap();
        let c1 = c.classify(&mk(1)).unwrap();
        let c2 = c.classify(&mk(2)).unwrap();
        assert_ne!(c1, c2);
        assert_ne!(c0, c1);
        // same class when rebuilt
        assert_eq!(c.classify(&mk(2)).unwrap(), c2);
    }

    #[test]
    fn aut_orders() {
        let c = ctx(jordan(), 2, true);
        let s = c.simple_class(0, &[0]).unwrap();
        let s2 = c.power_class(s, 2).unwrap();
        let s3 = c.power_class(s, 3).unwrap();
        let j2 = c.classify(&jordan_block(c.quiver(), 2, 2)).unwrap();
        assert_eq!(c.aut_order(s).unwrap(), 1);
        assert_eq!(c.aut_order(s2).unwrap(), 6);
        assert_eq!(c.aut_order(s3).unwrap(), 168);
        assert_eq!(c.aut_order(j2).unwrap(), 2);
        let c3 = ctx(jordan(), 3, true);
        let s = c3.simple_class(0, &[0]).unwrap();
        let s2 = c3.power_class(s, 2).unwrap();
        assert_eq!(c3.aut_order(s2).unwrap(), 48);
        let j2 = c3.classify(&jordan_block(c3.quiver(), 3, 2)).unwrap();
        assert_eq!(c3.aut_order(j2).unwrap(), 6);
    }

    #[test]
    fn subobject_counts() {
        let c = ctx(jordan(), 2, true);
        let s = c.simple_class(0, &[0]).unwrap();
        let s2 = c.power_class(s, 2).unwrap();
        let j2 = c.classify(&jordan_block(c.quiver(), 2, 2)).unwrap();
        // all 5 subspaces of F_2^2 are stable under the zero loop
        assert_eq!(c.subobjects(s2).unwrap().len(), 5);
        // the Jordan block has 3 stable subspaces: 0, ker, everything
        assert_eq!(c.subobjects(j2).unwrap().len(), 3);
        assert_eq!(c.subobjects(s).unwrap().len(), 2);
    }

    #[test]
    fn hall_numbers() {
        for q in [2u8, 3] {
            let c = ctx(jordan(), q, true);
            let s = c.simple_class(0, &[0]).unwrap();
            let s2 = c.power_class(s, 2).unwrap();
            let j2 = c.classify(&jordan_block(c.quiver(), q, 2)).unwrap();
            assert_eq!(c.hall_number(s, s, s2).unwrap(), (q + 1) as u64);
            assert_eq!(c.hall_number(s, s, j2).unwrap(), 1);
            let zero = c.zero_class();
            assert_eq!(c.hall_number(j2, zero, j2).unwrap(), 1);
            assert_eq!(c.hall_number(zero, j2, j2).unwrap(), 1);
        }
    }

    #[test]
    fn extension_counts_by_riedtmann_peng() {
        let c = ctx(jordan(), 2, true);
        let s = c.simple_class(0, &[0]).unwrap();
        let j2 = c.classify(&jordan_block(c.quiver(), 2, 2)).unwrap();
        // |Ext(S,S)_(J2)| = q - 1
        assert_eq!(c.ext_count(s, s, j2).unwrap(), q_int_pow(2, 0));
        let c3 = ctx(jordan(), 3, true);
        let s = c3.simple_class(0, &[0]).unwrap();
        let j2 = c3.classify(&jordan_block(c3.quiver(), 3, 2)).unwrap();
        assert_eq!(
            c3.ext_count(s, s, j2).unwrap(),
            Rational::from_integer(2.into())
        );
    }

    #[test]
    fn extension_scan_agrees_with_subobject_route() {
        // every (X, Y) pair with total dimension <= 3, both field sizes
        for q in [2u8, 3] {
            let c = ctx(jordan(), q, true);
            let mut classes = vec![c.zero_class()];
            for d in 1..=3usize {
                classes.extend(c.enumerate_reps(&[d]).unwrap().iter().map(|&(id, _)| id));
            }
            for &x in &classes {
                for &y in &classes {
                    if c.class_rep(x).total_dim() + c.class_rep(y).total_dim() > 3 {
                        continue;
                    }
                    let scan = c.extension_scan(x, y).unwrap();
                    // |B| = q^(sum X_i Y_i - hom(X,Y))
                    let sdim: usize = c
                        .class_dims(x)
                        .iter()
                        .zip(c.class_dims(y).iter())
                        .map(|(a, b)| a * b)
                        .sum();
                    let b_exp = sdim - c.hom_dim_classes(x, y);
                    let b_size = (q as u64).pow(b_exp as u32);
                    for &(z, count) in scan.iter() {
                        assert_eq!(count % b_size, 0, "coset count must divide");
                        let via_scan = Rational::from_integer((count / b_size).into());
                        let via_subobjects = c.ext_count(x, y, z).unwrap();
                        assert_eq!(via_scan, via_subobjects, "q={q} x={x:?} y={y:?} z={z:?}");
                    }
                    // total = q^(dim Ext^1)
                    let total: u64 = scan.iter().map(|&(_, n)| n).sum::<u64>() / b_size;
                    assert_eq!(total, (q as u64).pow(c.ext1_dim(x, y) as u32));
                }
            }
        }
    }

    #[test]
    fn class_tables_and_orbit_counting() {
        for q in [2u8, 3] {
            let c = ctx(jordan(), q, false);
            for d in 1..=2usize {
                let orbits = c.enumerate_orbits_raw(&[d]).unwrap();
                let total: u128 = orbits.iter().map(|&(_, s)| s).sum();
                assert_eq!(total, (q as u128).pow((d * d) as u32));
                for (rep, size) in &orbits {
                    let id = c.classify(rep).unwrap();
                    let aut = c.aut_order(id).unwrap();
                    assert_eq!(size * aut, c.base_change_order(&[d]));
                }
            }
        }
        // nilpotent class counts on the Jordan quiver = partitions
        let c = ctx(jordan(), 2, true);
        assert_eq!(c.enumerate_reps(&[1]).unwrap().len(), 1);
        assert_eq!(c.enumerate_reps(&[2]).unwrap().len(), 2);
        assert_eq!(c.enumerate_reps(&[3]).unwrap().len(), 3);
        // all one-dimensional modules: one per loop scalar
        let ca = ctx(jordan(), 3, false);
        assert_eq!(ca.enumerate_reps(&[1]).unwrap().len(), 3);
    }

    #[test]
    fn kernels_images_cokernels() {
        let j = jordan();
        let q = 2;
        let j2 = jordan_block(&j, q, 2);
        let s = Representation::simple(j.clone(), q, 0, &[0]).unwrap();
        // the inclusion S -> J2 hits the kernel of x
        let space = hom_space(&s, &j2);
        assert_eq!(space.dim(), 1);
        let f = space.element(&[1]);
        let (img, _) = morphism_image(&j2, &f);
        assert_eq!(img.total_dim(), 1);
        let coker = morphism_cokernel(&j2, &f);
        assert_eq!(coker.total_dim(), 1);
        // x : J2 -> J2 as a morphism has kernel and image S
        let espace = hom_space(&j2, &j2);
        let x = j2.mat(0).clone();
        // find coordinates giving x
        let mut found = false;
        for f in espace.iter() {
            if f[0] == x {
                let (ker, _) = morphism_kernel(&j2, &f);
                assert_eq!(ker.total_dim(), 1);
                assert!(ker.is_nilpotent());
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn budget_refusal_names_the_scan() {
        let c = RepContext::new(jordan(), 2, true, Budget::with_ceiling(4));
        let s = c.simple_class(0, &[0]).unwrap();
        let s2 = c.power_class(s, 2).unwrap();
        // aut scan for S^2 needs 2^4 = 16 > 4
        match c.aut_order(s2) {
            Err(Error::Budget { what, .. }) => assert_eq!(what, "automorphism count"),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
