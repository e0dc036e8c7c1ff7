//! The semi-derived Hall algebra of two-periodic complexes.
//!
//! The algebra is spanned by classes of complexes, localized at the
//! contractible families and reduced so that every element is a
//! `Q(sqrt q)`-combination of the normal-form basis
//!
//! ```text
//!   N(a, b, alpha, beta) = [C_a (+) C*_b] * [K_alpha] * [K*_beta]
//! ```
//!
//! with `a`, `b` isomorphism classes of representations and
//! `alpha, beta : I -> Z` integral weight vectors (the contractible classes
//! `K`/`K*` are group-like and invertible, so negative weights are allowed).
//! The product of two complex classes is the Hall product twisted by
//! `sqrt(q)^<res -, res ->`.
//!
//! Multiplication of basis elements is carried out entirely through
//! representation-level scans:
//!
//! * `reduce` rewrites any complex class as a scalar times one basis element
//!   (homology classes plus the ranks of the two differentials);
//! * `expand` inverts the straightening rule, writing a split pair
//!   `[C_a (+) C*_b]` as a combination of ordered products `[C_z][C*_w]`
//!   with trailing weights;
//! * `cross` straightens `[C*_b][C_a]` into normal order;
//! * `cprod`/`cstarprod` multiply two stalks of the same degree through the
//!   extension scan of representations;
//! * `nf_pair` folds an ordered pair `[C_z][C*_w]` back into the basis.
//!
//! Contractible classes move across everything at the cost of a
//! `sqrt(q)`-power of the symmetrized Euler form.  A second, fully
//! independent route — enumerating extension cocycles of complexes and
//! reducing every middle term — is exposed as [`SdhContext::hall_product_raw`]
//! and is used by the test suites to cross-validate the entire pipeline.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::complex::{res_pairing, CocycleSpace, ComplexContext, CxClassId, Z2Complex};
use crate::error::Result;
use crate::fq::checked_pow;
use crate::rep::{hom_space, morphism_cokernel, morphism_kernel, ClassId, RepContext};
use crate::scalar::{q_pow, QuadExt, Rational};

use num::bigint::BigInt;
use num::One;

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// One basis element `[C_a (+) C*_b] * [K_alpha] * [K*_beta]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NormalBasisElement {
    pub a: ClassId,
    pub b: ClassId,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

/// A finite `Q(sqrt q)`-combination of basis elements.
#[derive(Clone, PartialEq, Debug)]
pub struct SDHElement {
    q: u8,
    terms: BTreeMap<NormalBasisElement, QuadExt>,
}

impl SDHElement {
    pub fn zero(q: u8) -> Self {
        SDHElement {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(q: u8, e: NormalBasisElement, c: QuadExt) -> Self {
        let mut out = Self::zero(q);
        out.add_term(e, c);
        out
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalBasisElement, &QuadExt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &NormalBasisElement) -> QuadExt {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| QuadExt::zero(self.q))
    }

    /// Add `c * e`, dropping the term if the total vanishes.
    pub fn add_term(&mut self, e: NormalBasisElement, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn negated(&self) -> Self {
        SDHElement {
            q: self.q,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn scaled(&self, s: &QuadExt) -> Self {
        if s.is_zero() {
            return Self::zero(self.q);
        }
        SDHElement {
            q: self.q,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul(s)))
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Internal split-form terms
// ---------------------------------------------------------------------------

/// A term `coef * [C_z][C*_w] k(0, beta)` of an expanded split pair.
#[derive(Clone)]
struct SplitTerm {
    z: ClassId,
    w: ClassId,
    beta: Vec<i64>,
    coef: QuadExt,
}

/// A term `coef * [C_u][C*_v] k(alpha, beta)` of a straightened product
/// `[C*][C]`.
#[derive(Clone)]
struct CrossTerm {
    u: ClassId,
    v: ClassId,
    alpha: Vec<i64>,
    beta: Vec<i64>,
    coef: QuadExt,
}

/// Memo table keyed by an (ordered) pair of class indexes, holding a
/// shared list per pair.
type PairTable<T> = HashMap<(usize, usize), Arc<Vec<T>>>;

#[derive(Default)]
struct SdhCaches {
    expand: PairTable<SplitTerm>,
    cross: PairTable<CrossTerm>,
    nf: PairTable<(NormalBasisElement, QuadExt)>,
    cprod: PairTable<(ClassId, QuadExt)>,
    cstarprod: PairTable<(ClassId, QuadExt)>,
    mul: HashMap<(NormalBasisElement, NormalBasisElement), SDHElement>,
}

fn vec_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

// ---------------------------------------------------------------------------
// The algebra context
// ---------------------------------------------------------------------------

/// Shared state for one semi-derived Hall algebra: the classification
/// contexts plus memo tables for every straightening rule.
pub struct SdhContext {
    reps: Arc<RepContext>,
    cxs: Arc<ComplexContext>,
    caches: Mutex<SdhCaches>,
}

impl SdhContext {
    pub fn new(reps: Arc<RepContext>) -> Arc<Self> {
        let cxs = ComplexContext::new(reps.clone());
        Arc::new(SdhContext {
            reps,
            cxs,
            caches: Mutex::new(SdhCaches::default()),
        })
    }

    pub fn reps(&self) -> &Arc<RepContext> {
        &self.reps
    }

    pub fn complexes(&self) -> &Arc<ComplexContext> {
        &self.cxs
    }

    pub fn q(&self) -> u8 {
        self.reps.q()
    }

    fn n(&self) -> usize {
        self.reps.quiver().n()
    }

    fn v_pow(&self, e: i64) -> QuadExt {
        QuadExt::v_pow(self.q(), e)
    }

    fn euler(&self, x: &[i64], y: &[i64]) -> i64 {
        self.reps.quiver().euler_form(x, y)
    }

    fn sym(&self, x: &[i64], y: &[i64]) -> i64 {
        self.reps.quiver().sym_form(x, y)
    }

    /// Weight of a split stalk pair in the grading that the contractible
    /// classes see: `dim a - dim b`.
    fn delta(&self, a: ClassId, b: ClassId) -> Vec<i64> {
        vec_sub(&self.reps.class_dim_vec(a), &self.reps.class_dim_vec(b))
    }

    // -- element constructors ------------------------------------------------

    pub fn one(&self) -> SDHElement {
        let z = self.reps.zero_class();
        SDHElement::from_term(
            self.q(),
            NormalBasisElement {
                a: z,
                b: z,
                alpha: vec![0; self.n()],
                beta: vec![0; self.n()],
            },
            QuadExt::one(self.q()),
        )
    }

    /// `[C_a]`, the class of the degree-one stalk.
    pub fn stalk_elem(&self, a: ClassId) -> SDHElement {
        let z = self.reps.zero_class();
        SDHElement::from_term(
            self.q(),
            NormalBasisElement {
                a,
                b: z,
                alpha: vec![0; self.n()],
                beta: vec![0; self.n()],
            },
            QuadExt::one(self.q()),
        )
    }

    /// `[C*_b]`, the class of the degree-zero stalk.
    pub fn costalk_elem(&self, b: ClassId) -> SDHElement {
        let z = self.reps.zero_class();
        SDHElement::from_term(
            self.q(),
            NormalBasisElement {
                a: z,
                b,
                alpha: vec![0; self.n()],
                beta: vec![0; self.n()],
            },
            QuadExt::one(self.q()),
        )
    }

    /// `[C_a (+) C*_b]`.
    pub fn pair_elem(&self, a: ClassId, b: ClassId) -> SDHElement {
        SDHElement::from_term(
            self.q(),
            NormalBasisElement {
                a,
                b,
                alpha: vec![0; self.n()],
                beta: vec![0; self.n()],
            },
            QuadExt::one(self.q()),
        )
    }

    /// `[K_alpha] * [K*_beta]` for integral weight vectors.
    pub fn k_weight(&self, alpha: &[i64], beta: &[i64]) -> SDHElement {
        let z = self.reps.zero_class();
        SDHElement::from_term(
            self.q(),
            NormalBasisElement {
                a: z,
                b: z,
                alpha: alpha.to_vec(),
                beta: beta.to_vec(),
            },
            QuadExt::one(self.q()),
        )
    }

    /// `[K_alpha]`.
    pub fn k_elem(&self, alpha: &[i64]) -> SDHElement {
        self.k_weight(alpha, &vec![0; self.n()])
    }

    /// `[K*_beta]`.
    pub fn kstar_elem(&self, beta: &[i64]) -> SDHElement {
        self.k_weight(&vec![0; self.n()], beta)
    }

    /// The class divided by its automorphism count:
    /// `[C_a (+) C*_b] / (|Aut a| |Aut b|)`.
    pub fn double_bracket(&self, a: ClassId, b: ClassId) -> Result<SDHElement> {
        let aut = BigInt::from(self.reps.aut_order(a)?) * BigInt::from(self.reps.aut_order(b)?);
        let coef = QuadExt::from_rational(self.q(), Rational::new(BigInt::one(), aut));
        Ok(self.pair_elem(a, b).scaled(&coef))
    }

    // -- reduction of arbitrary complexes ------------------------------------

    /// Rewrite the class of a complex as `coef * N(a, b, alpha, beta)`:
    /// `a, b` are the degree-one/degree-zero homology classes, the weights
    /// are the per-vertex ranks of the differentials, and the scalar is
    /// `sqrt(q)^(-<dim H^0 - dim H^1, rk d0 - rk d1>)`.
    pub fn reduce(&self, x: &Z2Complex) -> Result<(NormalBasisElement, QuadExt)> {
        let (h0, h1) = x.homology();
        let a = self.reps.classify(&h1)?;
        let b = self.reps.classify(&h0)?;
        let alpha = x.rank_vec_d0();
        let beta = x.rank_vec_d1();
        let hdiff = vec_sub(&h0.dim_vec(), &h1.dim_vec());
        let imdiff = vec_sub(&alpha, &beta);
        let coef = self.v_pow(-self.euler(&hdiff, &imdiff));
        Ok((NormalBasisElement { a, b, alpha, beta }, coef))
    }

    /// [`SdhContext::reduce`] as an element.
    pub fn reduce_elem(&self, x: &Z2Complex) -> Result<SDHElement> {
        let (e, c) = self.reduce(x)?;
        Ok(SDHElement::from_term(self.q(), e, c))
    }

    // -- straightening rules (all memoised) ----------------------------------

    /// All morphisms `z -> w` with kernel, cokernel and rank data, the common
    /// ingredient of the straightening rules.
    fn morphism_triples(
        &self,
        z: ClassId,
        w: ClassId,
    ) -> Result<Vec<(ClassId, ClassId, Vec<i64>)>> {
        let zr = self.reps.class_rep(z);
        let wr = self.reps.class_rep(w);
        let space = hom_space(&zr, &wr);
        checked_pow(
            self.q(),
            space.dim() as u32,
            "morphism straightening scan",
            self.reps.budget().max_scan,
        )?;
        let mut out = Vec::new();
        for f in space.iter() {
            let rank: Vec<i64> = f.iter().map(|m| m.rank() as i64).collect();
            let (ker, _) = morphism_kernel(&zr, &f);
            let coker = morphism_cokernel(&wr, &f);
            out.push((self.reps.classify(&ker)?, self.reps.classify(&coker)?, rank));
        }
        Ok(out)
    }

    /// `[C_z][C*_w]` in the normal-form basis: one term per morphism
    /// `phi : z -> w`, namely
    /// `sqrt(q)^<dim w - dim z, rk phi> * N(ker phi, coker phi, 0, rk phi)`.
    fn nf_pair(&self, z: ClassId, w: ClassId) -> Result<Arc<Vec<(NormalBasisElement, QuadExt)>>> {
        if let Some(t) = self.caches.lock().unwrap().nf.get(&(z.0, w.0)) {
            return Ok(t.clone());
        }
        let dz = self.reps.class_dim_vec(z);
        let dw = self.reps.class_dim_vec(w);
        let diff = vec_sub(&dw, &dz);
        let mut out = Vec::new();
        for (ker, coker, rank) in self.morphism_triples(z, w)? {
            let coef = self.v_pow(self.euler(&diff, &rank));
            out.push((
                NormalBasisElement {
                    a: ker,
                    b: coker,
                    alpha: vec![0; self.n()],
                    beta: rank,
                },
                coef,
            ));
        }
        let out = Arc::new(out);
        self.caches
            .lock()
            .unwrap()
            .nf
            .insert((z.0, w.0), out.clone());
        Ok(out)
    }

    /// `[C_a (+) C*_b]` as a combination of ordered products
    /// `[C_z][C*_w] k(0, beta)`: the inversion of [`SdhContext::nf_pair`],
    /// recursing into strictly smaller split pairs.
    fn expand(&self, a: ClassId, b: ClassId) -> Result<Arc<Vec<SplitTerm>>> {
        if let Some(t) = self.caches.lock().unwrap().expand.get(&(a.0, b.0)) {
            return Ok(t.clone());
        }
        let da = self.reps.class_dim_vec(a);
        let db = self.reps.class_dim_vec(b);
        let diff = vec_sub(&db, &da);
        let mut out = vec![SplitTerm {
            z: a,
            w: b,
            beta: vec![0; self.n()],
            coef: QuadExt::one(self.q()),
        }];
        for (ker, coker, rank) in self.morphism_triples(a, b)? {
            if rank.iter().all(|&r| r == 0) {
                continue; // the zero morphism gives the element itself
            }
            let coef = self.v_pow(self.euler(&diff, &rank)).neg();
            let inner = self.expand(ker, coker)?;
            for t in inner.iter() {
                out.push(SplitTerm {
                    z: t.z,
                    w: t.w,
                    beta: vec_add(&t.beta, &rank),
                    coef: coef.mul(&t.coef),
                });
            }
        }
        let out = Arc::new(out);
        self.caches
            .lock()
            .unwrap()
            .expand
            .insert((a.0, b.0), out.clone());
        Ok(out)
    }

    /// Straighten `[C*_b][C_a]` into ordered products
    /// `[C_u][C*_v] k(alpha, beta)`: one family per morphism `psi : b -> a`,
    /// with scalar `sqrt(q)^(-<dim b - dim a, rk psi>)` and weight
    /// `k(rk psi, 0)`, then each split pair expanded.
    fn cross(&self, b: ClassId, a: ClassId) -> Result<Arc<Vec<CrossTerm>>> {
        if let Some(t) = self.caches.lock().unwrap().cross.get(&(b.0, a.0)) {
            return Ok(t.clone());
        }
        let db = self.reps.class_dim_vec(b);
        let da = self.reps.class_dim_vec(a);
        let diff = vec_sub(&db, &da);
        let mut out = Vec::new();
        for (ker, coker, rank) in self.morphism_triples(b, a)? {
            let coef = self.v_pow(-self.euler(&diff, &rank));
            // the split pair is [C_{a/im psi} (+) C*_{ker psi}]
            let inner = self.expand(coker, ker)?;
            for t in inner.iter() {
                out.push(CrossTerm {
                    u: t.z,
                    v: t.w,
                    alpha: rank.clone(),
                    beta: t.beta.clone(),
                    coef: coef.mul(&t.coef),
                });
            }
        }
        let out = Arc::new(out);
        self.caches
            .lock()
            .unwrap()
            .cross
            .insert((b.0, a.0), out.clone());
        Ok(out)
    }

    /// `[C_a][C_x]`: the twisted Hall product of two degree-one stalks, via
    /// the extension scan of representations (quotient `a`, sub `x`):
    /// `sqrt(q)^<dim a, dim x> * sum_Z (n_Z / q^(sum_i a_i x_i)) [C_Z]`.
    fn cprod(&self, a: ClassId, x: ClassId) -> Result<Arc<Vec<(ClassId, QuadExt)>>> {
        if let Some(t) = self.caches.lock().unwrap().cprod.get(&(a.0, x.0)) {
            return Ok(t.clone());
        }
        let out = Arc::new(self.stalk_product_terms(a, x)?);
        self.caches
            .lock()
            .unwrap()
            .cprod
            .insert((a.0, x.0), out.clone());
        Ok(out)
    }

    /// `[C*_w][C*_y]`: same scan in degree zero.
    fn cstarprod(&self, w: ClassId, y: ClassId) -> Result<Arc<Vec<(ClassId, QuadExt)>>> {
        if let Some(t) = self.caches.lock().unwrap().cstarprod.get(&(w.0, y.0)) {
            return Ok(t.clone());
        }
        let out = Arc::new(self.stalk_product_terms(w, y)?);
        self.caches
            .lock()
            .unwrap()
            .cstarprod
            .insert((w.0, y.0), out.clone());
        Ok(out)
    }

    /// Common body of the stalk products: extensions of `quot` by `sub`
    /// weighted by `n_Z / q^(sum_i quot_i sub_i)`, twisted by
    /// `sqrt(q)^<dim quot, dim sub>`.
    fn stalk_product_terms(&self, quot: ClassId, sub: ClassId) -> Result<Vec<(ClassId, QuadExt)>> {
        let dq = self.reps.class_dim_vec(quot);
        let ds = self.reps.class_dim_vec(sub);
        let twist = self.v_pow(self.euler(&dq, &ds));
        let pairs: i64 = dq.iter().zip(ds.iter()).map(|(a, b)| a * b).sum();
        let scan = self.reps.extension_scan(quot, sub)?;
        let mut out = Vec::with_capacity(scan.len());
        for &(z, n) in scan.iter() {
            let frac = q_pow(self.q(), -pairs) * Rational::from_integer(BigInt::from(n));
            out.push((z, twist.mul(&QuadExt::from_rational(self.q(), frac))));
        }
        Ok(out)
    }

    // -- multiplication -------------------------------------------------------

    /// Product of two basis elements, straightened back into the basis.
    fn mul_basis(&self, x: &NormalBasisElement, y: &NormalBasisElement) -> Result<SDHElement> {
        if let Some(m) = self.caches.lock().unwrap().mul.get(&(x.clone(), y.clone())) {
            return Ok(m.clone());
        }
        let q = self.q();
        let mut out = SDHElement::zero(q);
        // move x's weights across the split pair of y
        let xw = vec_sub(&x.alpha, &x.beta);
        let scalar1 = self.v_pow(self.sym(&xw, &self.delta(y.a, y.b)));
        let alpha_xy = vec_add(&x.alpha, &y.alpha);
        let beta_xy = vec_add(&x.beta, &y.beta);
        let ex = self.expand(x.a, x.b)?;
        let ey = self.expand(y.a, y.b)?;
        for t1 in ex.iter() {
            for t2 in ey.iter() {
                // move k(0, t1.beta) across [C_z2][C*_w2]
                let s2 = self.v_pow(-self.sym(&t1.beta, &self.delta(t2.z, t2.w)));
                let c12 = scalar1.mul(&t1.coef).mul(&t2.coef).mul(&s2);
                let dw2 = self.reps.class_dim_vec(t2.w);
                for ct in self.cross(t1.w, t2.z)?.iter() {
                    // move k(ct.alpha, ct.beta) across [C*_w2]
                    let neg_w2: Vec<i64> = dw2.iter().map(|&d| -d).collect();
                    let s3 = self.v_pow(self.sym(&vec_sub(&ct.alpha, &ct.beta), &neg_w2));
                    let c3 = c12.mul(&ct.coef).mul(&s3);
                    for (zc, c4) in self.cprod(t1.z, ct.u)?.iter() {
                        for (wc, c5) in self.cstarprod(ct.v, t2.w)?.iter() {
                            let c45 = c3.mul(c4).mul(c5);
                            for (nbe, c6) in self.nf_pair(*zc, *wc)?.iter() {
                                let alpha = vec_add(&vec_add(&nbe.alpha, &ct.alpha), &alpha_xy);
                                let beta = vec_add(
                                    &vec_add(&vec_add(&nbe.beta, &ct.beta), &t1.beta),
                                    &vec_add(&t2.beta, &beta_xy),
                                );
                                out.add_term(
                                    NormalBasisElement {
                                        a: nbe.a,
                                        b: nbe.b,
                                        alpha,
                                        beta,
                                    },
                                    c45.mul(c6),
                                );
                            }
                        }
                    }
                }
            }
        }
        self.caches
            .lock()
            .unwrap()
            .mul
            .insert((x.clone(), y.clone()), out.clone());
        Ok(out)
    }

    /// Product of two elements.
    pub fn mul(&self, x: &SDHElement, y: &SDHElement) -> Result<SDHElement> {
        let mut out = SDHElement::zero(self.q());
        for (ex, cx) in x.terms() {
            for (ey, cy) in y.terms() {
                let prod = self.mul_basis(ex, ey)?;
                let c = cx.mul(cy);
                for (e, pc) in prod.terms() {
                    out.add_term(e.clone(), pc.mul(&c));
                }
            }
        }
        Ok(out)
    }

    /// Product of a list of elements, left to right; the empty product is 1.
    pub fn mul_all(&self, factors: &[SDHElement]) -> Result<SDHElement> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    // -- the independent route -------------------------------------------------

    /// The twisted Hall product `[L] * [M]` computed soberly from the
    /// definition: enumerate every extension cocycle, reduce every middle
    /// term, and weigh by `1 / (|coboundaries| |Hom(L, M)|)`, all times the
    /// `sqrt(q)`-power of the resolution pairing.  Shares nothing with the
    /// straightening machinery above, so agreement between the two routes
    /// checks the whole multiplication pipeline.
    pub fn hall_product_raw(&self, l: CxClassId, m: CxClassId) -> Result<SDHElement> {
        let lx = self.cxs.class_rep_cx(l);
        let mx = self.cxs.class_rep_cx(m);
        let twist = res_pairing(self.reps.quiver(), &lx, &mx);
        let space = CocycleSpace::new(&lx, &mx);
        let denom_exp = (space.coboundary_dim() + crate::complex::hom_dim_cx(&lx, &mx)) as i64;
        let scan = self.cxs.middle_scan(l, m)?;
        let mut out = SDHElement::zero(self.q());
        for &(z, n) in scan.iter() {
            let zx = self.cxs.class_rep_cx(z);
            let (nbe, coef) = self.reduce(&zx)?;
            let weight = q_pow(self.q(), -denom_exp) * Rational::from_integer(BigInt::from(n));
            let c = coef
                .mul(&QuadExt::from_rational(self.q(), weight))
                .mul(&self.v_pow(twist));
            out.add_term(nbe, c);
        }
        Ok(out)
    }

    // -- rendering --------------------------------------------------------------

    /// Deterministic plain-text rendering (basis terms in storage order).
    pub fn render(&self, e: &SDHElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(e.len());
        for (nbe, c) in e.terms() {
            parts.push(format!(
                "{} * N[a={}; b={}; k={:?}; k*={:?}]",
                c,
                self.reps.describe(nbe.a),
                self.reps.describe(nbe.b),
                nbe.alpha,
                nbe.beta
            ));
        }
        parts.join("  +  ")
    }
}
