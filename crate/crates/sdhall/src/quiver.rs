//! Quivers with loops and their symmetric Borcherds-Cartan data.
//!
//! A quiver here is a finite set of vertices with a finite multiset of
//! arrows; loops are allowed and are the interesting case.  From the arrow
//! counts we derive:
//!
//! * the Euler form `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j` on
//!   integer vectors (it depends only on dimension vectors),
//! * its symmetrisation `(d, e) = <d, e> + <e, d>`,
//! * the symmetric Borcherds-Cartan matrix `a_ij = (alpha_i, alpha_j)`,
//!   so `a_ii = 2 - 2 g_i` where `g_i` counts loops at `i`, and
//!   `a_ij = -(number of arrows between i and j in both directions)` for
//!   `i != j`.
//!
//! Vertices with `g_i = 0` are real, `g_i = 1` isotropic, `g_i >= 2`
//! non-isotropic imaginary.

use std::fmt;

use crate::error::{Error, Result};

/// A finite quiver, possibly with loops and multiple arrows.
///
/// Vertices carry external ids (as written in input files) but are addressed
/// internally by index `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    ids: Vec<u32>,
    /// Arrows as `(source index, target index)`.
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Build from external vertex ids and arrows given by external ids.
    pub fn new(ids: Vec<u32>, arrow_ids: &[(u32, u32)]) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::Config("quiver needs at least one vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &ids {
            if !seen.insert(v) {
                return Err(Error::Config(format!("duplicate vertex id {v}")));
            }
        }
        let index = |v: u32| -> Result<usize> {
            ids.iter()
                .position(|&w| w == v)
                .ok_or_else(|| Error::Config(format!("arrow references unknown vertex {v}")))
        };
        let mut arrows = Vec::with_capacity(arrow_ids.len());
        for &(s, t) in arrow_ids {
            arrows.push((index(s)?, index(t)?));
        }
        Ok(Quiver { ids, arrows })
    }

    /// Single vertex with `g` loops (the `g = 1` case is the Jordan quiver).
    pub fn loop_quiver(g: usize) -> Quiver {
        Quiver {
            ids: vec![1],
            arrows: vec![(0, 0); g],
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    /// External ids in order.
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    /// Arrows as index pairs, in input order.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Index of an external vertex id.
    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.ids.iter().position(|&w| w == id)
    }

    /// Number of loops at vertex `i`.
    pub fn loops_at(&self, i: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, t)| s == i && t == i)
            .count()
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, t)| s == i && t == j)
            .count()
    }

    /// Euler form on integer vectors (only dimension vectors matter).
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        assert_eq!(d.len(), self.n());
        assert_eq!(e.len(), self.n());
        let diag: i64 = (0..self.n()).map(|i| d[i] * e[i]).sum();
        let arr: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        diag - arr
    }

    /// Symmetrised Euler form `(d, e) = <d, e> + <e, d>`.
    pub fn sym_form(&self, d: &[i64], e: &[i64]) -> i64 {
        self.euler_form(d, e) + self.euler_form(e, d)
    }

    /// The symmetric Borcherds-Cartan matrix of the quiver.
    pub fn cartan(&self) -> BorcherdsCartan {
        let n = self.n();
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut ei = vec![0i64; n];
                let mut ej = vec![0i64; n];
                ei[i] = 1;
                ej[j] = 1;
                a[i][j] = self.sym_form(&ei, &ej);
            }
        }
        let kinds = (0..n)
            .map(|i| match self.loops_at(i) {
                0 => VertexKind::Real,
                1 => VertexKind::Isotropic,
                _ => VertexKind::Imaginary,
            })
            .collect();
        BorcherdsCartan { a, kinds }
    }

    /// Unit vector at vertex index `i`.
    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.n()];
        v[i] = 1;
        v
    }
}

/// Vertex class determined by the diagonal Cartan entry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexKind {
    /// No loops, `a_ii = 2`.
    Real,
    /// One loop, `a_ii = 0`.
    Isotropic,
    /// Two or more loops, `a_ii < 0`.
    Imaginary,
}

impl VertexKind {
    pub fn is_real(self) -> bool {
        matches!(self, VertexKind::Real)
    }
}

/// A symmetric integer matrix with even diagonal entries `<= 2` and
/// non-positive off-diagonal entries, together with the vertex classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BorcherdsCartan {
    a: Vec<Vec<i64>>,
    kinds: Vec<VertexKind>,
}

impl BorcherdsCartan {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn kind(&self, i: usize) -> VertexKind {
        self.kinds[i]
    }

    /// Check the defining shape constraints; the construction from a quiver
    /// always satisfies them.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if self.a[i].len() != n {
                return Err(Error::Config("cartan matrix is not square".into()));
            }
            if self.a[i][i] > 2 || self.a[i][i] % 2 != 0 {
                return Err(Error::Config(format!(
                    "diagonal entry a[{i}][{i}] = {} must be an even integer <= 2",
                    self.a[i][i]
                )));
            }
            for j in 0..n {
                if self.a[i][j] != self.a[j][i] {
                    return Err(Error::Config("cartan matrix is not symmetric".into()));
                }
                if i != j && self.a[i][j] > 0 {
                    return Err(Error::Config(format!(
                        "off-diagonal entry a[{i}][{j}] = {} must be <= 0",
                        self.a[i][j]
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for BorcherdsCartan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            for j in 0..self.n() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>3}", self.a[i][j])?;
            }
            let kind = match self.kinds[i] {
                VertexKind::Real => "real",
                VertexKind::Isotropic => "isotropic",
                VertexKind::Imaginary => "imaginary",
            };
            writeln!(f, "   # {kind}")?;
        }
        Ok(())
    }
}
