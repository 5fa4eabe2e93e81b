//! Finite-dimensional modules over certified Jacobian models.
//!
//! A [`Representation`] assigns a space `M_i = Q^{d_i}` to every vertex and a
//! matrix `d_{t(a)} × d_{s(a)}` to every arrow. Paths act left to right, so a
//! path `p = a_1 ⋯ a_k` acts by `A_{a_k} ⋯ A_{a_1}`.
//!
//! ```
//! use std::sync::Arc;
//! use qpcat::families::{build_wnm, FamilyParams};
//! use qpcat::jacobian::truncated_model;
//! use qpcat::repmod::{rep_validate, Representation};
//!
//! let qp = build_wnm(&FamilyParams::from_ints(2, 0, &[], &[1]).unwrap(), 12).unwrap();
//! let model = Arc::new(truncated_model(&qp).unwrap());
//! let s1 = Representation::simple(&model, 0);
//! assert!(rep_validate(&s1).valid);
//! assert_eq!(s1.dims(), &[1, 0]);
//! ```

mod catalog;
mod grass;
mod present;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::{fmt_q, q_mod, Q};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::jacobian::JacobianModel;
use crate::linalg::fp::FpMatrix;
use crate::linalg::{Echelon, Matrix};
use crate::path::Path;
use crate::quiver::{ArrowId, Quiver, Vertex};

pub use catalog::{case_model, catalog_names, catalog_module, CaseId, TwelveVariant};
pub use grass::{gr_euler, grass_counts, sampling_primes, submodule_counts, CountOptions, GrassCount};
pub use present::{g_vector, hom_dim, is_tau_rigid, min_presentation, projectives, tau, GVector, Presentation};

/// A representation of the quiver satisfying the Jacobian relations.
#[derive(Clone)]
pub struct Representation {
    model: Arc<JacobianModel>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// Result of [`rep_validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    /// The first relation that does not act as zero.
    pub violated: Option<String>,
}

impl Representation {
    /// Checks matrix shapes only; relations are checked by [`rep_validate`].
    pub fn new(model: &Arc<JacobianModel>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = model.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::InvalidModule(format!("{} dimensions for {} vertices", dims.len(), q.num_vertices())));
        }
        if maps.len() != q.num_arrows() {
            return Err(Error::InvalidModule(format!("{} matrices for {} arrows", maps.len(), q.num_arrows())));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { model: model.clone(), dims, maps })
    }

    pub fn zero(model: &Arc<JacobianModel>) -> Self {
        Self::with_dims(model, vec![0; model.quiver().num_vertices()])
    }

    /// All arrows act as zero.
    pub fn with_dims(model: &Arc<JacobianModel>, dims: Vec<usize>) -> Self {
        let maps = model.quiver().arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        Representation { model: model.clone(), dims, maps }
    }

    pub fn simple(model: &Arc<JacobianModel>, v: Vertex) -> Self {
        let mut dims = vec![0; model.quiver().num_vertices()];
        dims[v] = 1;
        Self::with_dims(model, dims)
    }

    /// A tree module: one basis vector per node, labelled by a vertex, and an
    /// edge `(x, y, a)` meaning arrow `a` sends node `x` to node `y`.
    pub fn tree(model: &Arc<JacobianModel>, nodes: &[Vertex], edges: &[(usize, usize, ArrowId)]) -> Result<Self> {
        let q = model.quiver();
        let mut dims = vec![0; q.num_vertices()];
        let mut slot = Vec::with_capacity(nodes.len());
        for &v in nodes {
            if v >= q.num_vertices() {
                return Err(Error::InvalidModule(format!("no vertex {v}")));
            }
            slot.push(dims[v]);
            dims[v] += 1;
        }
        let mut r = Self::with_dims(model, dims);
        for &(x, y, a) in edges {
            if x >= nodes.len() || y >= nodes.len() || (a as usize) >= q.num_arrows() {
                return Err(Error::InvalidModule(format!("edge ({x}, {y}, {a}) out of range")));
            }
            if q.source(a) != nodes[x] || q.target(a) != nodes[y] {
                return Err(Error::InvalidModule(format!("arrow {} does not join nodes {x} and {y}", q.arrow(a).name)));
            }
            r.maps[a as usize].set(slot[y], slot[x], Q::one());
        }
        Ok(r)
    }

    /// A uniserial string `v_0 → v_1 → ⋯` along the unique arrow between
    /// consecutive vertices.
    pub fn string(model: &Arc<JacobianModel>, vertices: &[Vertex]) -> Result<Self> {
        let q = model.quiver();
        let mut edges = Vec::new();
        for (i, w) in vertices.windows(2).enumerate() {
            let joining: Vec<ArrowId> = q.outgoing(w[0]).iter().copied().filter(|&a| q.target(a) == w[1]).collect();
            match joining.as_slice() {
                [a] => edges.push((i, i + 1, *a)),
                _ => {
                    return Err(Error::InvalidModule(format!(
                        "{} arrows from {} to {}",
                        joining.len(),
                        q.label(w[0]),
                        q.label(w[1])
                    )))
                }
            }
        }
        Self::tree(model, vertices, &edges)
    }

    pub fn model(&self) -> &Arc<JacobianModel> {
        &self.model
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.model.quiver()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: ArrowId) -> &Matrix {
        &self.maps[a as usize]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Start of each vertex block in the concatenated space `⊕ M_i`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut s = 0;
        for &d in &self.dims {
            out.push(s);
            s += d;
        }
        out
    }

    /// The matrix by which a path acts, `M_{s(p)} → M_{t(p)}`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.source()]);
        for &a in p.arrows() {
            m = self.maps[a as usize].mul(&m);
        }
        m
    }

    /// The action of an element whose terms all run from `s` to `t`.
    pub fn element_matrix(&self, x: &AlgebraElement, s: Vertex, t: Vertex) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.dims[t], self.dims[s]);
        for (p, c) in x.terms() {
            if p.source() != s || p.target() != t {
                return Err(Error::InvalidModule(format!("term {} does not run from {s} to {t}", p.display(self.quiver()))));
            }
            out = out.add(&self.path_matrix(p).scale(c));
        }
        Ok(out)
    }

    /// `⊕ M_i`, with blocks of each summand kept together at every vertex.
    pub fn direct_sum(parts: &[Representation]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidModule("empty direct sum".into()));
        };
        let q = first.quiver().clone();
        let n = q.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let mut maps = Vec::with_capacity(q.num_arrows());
        for (i, a) in q.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut ro, mut co) = (0, 0);
            for r in parts {
                let b = &r.maps[i];
                for x in 0..b.rows() {
                    for y in 0..b.cols() {
                        if !b.get(x, y).is_zero() {
                            m.set(ro + x, co + y, b.get(x, y).clone());
                        }
                    }
                }
                ro += b.rows();
                co += b.cols();
            }
            maps.push(m);
        }
        Representation::new(&first.model, dims, maps)
    }

    /// The smallest submodule containing the given vectors, one echelon form per vertex.
    pub fn closure(&self, generators: &[(Vertex, Vec<Q>)]) -> Vec<Echelon> {
        let mut sub: Vec<Echelon> = self.dims.iter().map(|&d| Echelon::new(d)).collect();
        let mut queue: Vec<(Vertex, Vec<Q>)> = generators.to_vec();
        while let Some((v, x)) = queue.pop() {
            if !sub[v].insert(x.clone()) {
                continue;
            }
            for &a in self.quiver().outgoing(v) {
                queue.push((self.quiver().target(a), self.maps[a as usize].apply(&x)));
            }
        }
        sub
    }

    /// `M / N` for a submodule given by per-vertex echelon forms; the
    /// quotient basis is the set of non-pivot coordinates.
    pub fn quotient(&self, sub: &[Echelon]) -> Result<Self> {
        let q = self.quiver();
        let free: Vec<Vec<usize>> = sub
            .iter()
            .zip(&self.dims)
            .map(|(e, &d)| (0..d).filter(|c| !e.pivots().contains(c)).collect())
            .collect();
        let dims: Vec<usize> = free.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(q.num_arrows());
        for (i, a) in q.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            for (col, &f) in free[a.source].iter().enumerate() {
                let img = sub[a.target].reduce(self.maps[i].column(f));
                for (row, &g) in free[a.target].iter().enumerate() {
                    m.set(row, col, img[g].clone());
                }
            }
            maps.push(m);
        }
        Representation::new(&self.model, dims, maps)
    }

    /// Matrices reduced modulo `p`; `None` when `p` divides a denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<Vec<FpMatrix>> {
        self.maps
            .iter()
            .map(|m| {
                let mut out = FpMatrix::zeros(m.rows(), m.cols());
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        out.data[i * m.cols() + j] = q_mod(m.get(i, j), p)?;
                    }
                }
                Some(out)
            })
            .collect()
    }

    /// Human-readable listing of the dimension vector and nonzero matrices.
    pub fn show(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quiver();
        writeln!(f, "dim = {:?}", self.dims)?;
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            if m.is_zero() {
                continue;
            }
            let rows: Vec<String> =
                (0..m.rows()).map(|i| m.row(i).iter().map(fmt_q).collect::<Vec<_>>().join(" ")).collect();
            writeln!(f, "{}: [{}]", a.name, rows.join("; "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation({:?})", self.dims)
    }
}

/// Checks nilpotency and that every generator `∂_a W` acts as zero.
pub fn rep_validate(r: &Representation) -> Validation {
    let q = r.quiver();
    for (a, g) in q.arrows().iter().zip(r.model.generators()) {
        match r.element_matrix(g, a.target, a.source) {
            Ok(m) if m.is_zero() => {}
            Ok(_) => return Validation { valid: false, violated: Some(format!("d/d{} W = {}", a.name, g)) },
            Err(e) => return Validation { valid: false, violated: Some(e.to_string()) },
        }
    }
    if !is_nilpotent(r) {
        return Validation { valid: false, violated: Some("arrows do not act nilpotently".into()) };
    }
    Validation { valid: true, violated: None }
}

fn is_nilpotent(r: &Representation) -> bool {
    let n = r.total_dim();
    let off = r.offsets();
    let mut big = Matrix::zeros(n, n);
    for (a, m) in r.quiver().arrows().iter().zip(&r.maps) {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let x = big.get(off[a.target] + i, off[a.source] + j) + m.get(i, j);
                big.set(off[a.target] + i, off[a.source] + j, x);
            }
        }
    }
    let mut pow = big.clone();
    for _ in 0..n {
        if pow.is_zero() {
            return true;
        }
        pow = pow.mul(&big);
    }
    pow.is_zero()
}

/// Errors unless the representation satisfies the relations.
pub(crate) fn require_valid(r: &Representation) -> Result<()> {
    let v = rep_validate(r);
    if v.valid {
        Ok(())
    } else {
        Err(Error::InvalidModule(v.violated.unwrap_or_default()))
    }
}
