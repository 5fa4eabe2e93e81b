//! Projectives, minimal presentations, g-vectors, Hom dimensions and τ.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::coeff::Q;
use crate::error::{Error, Result};
use crate::jacobian::JacobianModel;
use crate::linalg::{Echelon, Matrix};
use crate::path::Path;
use crate::quiver::Vertex;

use super::{require_valid, Representation};

/// `idx[i][v]`: model basis positions of paths from `i` to `v`.
fn basis_by_ends(model: &JacobianModel) -> Vec<Vec<Vec<usize>>> {
    let n = model.quiver().num_vertices();
    let mut idx = vec![vec![Vec::new(); n]; n];
    for (k, p) in model.basis().iter().enumerate() {
        idx[p.source()][p.target()].push(k);
    }
    idx
}

fn require_finite(model: &JacobianModel) -> Result<()> {
    if model.is_finite() {
        Ok(())
    } else {
        Err(Error::Undetermined(format!("no finite certificate at cap {}", model.cap())))
    }
}

/// `P_i = e_i J`, spanned by basis paths starting at `i`; arrows extend paths on the right.
pub fn projectives(model: &Arc<JacobianModel>) -> Result<Vec<Representation>> {
    require_finite(model)?;
    let idx = basis_by_ends(model);
    let qv = model.quiver();
    (0..qv.num_vertices())
        .map(|i| {
            let dims: Vec<usize> = idx[i].iter().map(Vec::len).collect();
            let maps = qv
                .arrows()
                .iter()
                .enumerate()
                .map(|(a, arr)| {
                    let mut m = Matrix::zeros(dims[arr.target], dims[arr.source]);
                    let ext = Path::arrow(qv, a as u32);
                    for (col, &b) in idx[i][arr.source].iter().enumerate() {
                        let p = model.basis()[b].concat(&ext).expect("composable");
                        for (k, c) in model.path_coordinates(&p) {
                            let row = idx[i][arr.target].iter().position(|&x| x == k).expect("endpoints preserved");
                            m.set(row, col, c);
                        }
                    }
                    m
                })
                .collect();
            Representation::new(model, dims, maps)
        })
        .collect()
}

/// A minimal projective presentation `P₁ → P₀ → M → 0`.
#[derive(Debug, Clone)]
pub struct Presentation {
    /// Multiplicity `a_i` of `P_i` in `P₀`.
    pub a: Vec<usize>,
    /// Multiplicity `b_i` of `P_i` in `P₁`.
    pub b: Vec<usize>,
    /// `P₀ → M` on the concatenated spaces `⊕_v`.
    pub cover: Matrix,
    /// `P₁ → P₀` on the concatenated spaces `⊕_v`.
    pub relations: Matrix,
    p0_tops: Vec<Vertex>,
    /// Kernel generators: vertex and vector in `P₀` at that vertex.
    kernel_gens: Vec<(Vertex, Vec<Q>)>,
}

/// `g_M = (a_i - b_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GVector(pub Vec<i64>);

impl std::ops::Add for &GVector {
    type Output = GVector;
    fn add(self, o: &GVector) -> GVector {
        GVector(self.0.iter().zip(&o.0).map(|(x, y)| x + y).collect())
    }
}

fn sum_of(model: &Arc<JacobianModel>, proj: &[Representation], tops: &[Vertex]) -> Result<Representation> {
    if tops.is_empty() {
        return Ok(Representation::zero(model));
    }
    Representation::direct_sum(&tops.iter().map(|&v| proj[v].clone()).collect::<Vec<_>>())
}

/// Complement of the radical `Σ_a im A_a` at each vertex, inside `spaces[v]`.
fn top_lifts(r: &Representation, spaces: &[Vec<Vec<Q>>]) -> Vec<(Vertex, Vec<Q>)> {
    let qv = r.quiver();
    let mut out = Vec::new();
    for v in 0..qv.num_vertices() {
        let mut e = Echelon::new(r.dims()[v]);
        for &a in qv.incoming(v) {
            for x in &spaces[qv.source(a)] {
                e.insert(r.map(a).apply(x));
            }
        }
        for x in &spaces[v] {
            if e.insert(x.clone()) {
                out.push((v, x.clone()));
            }
        }
    }
    out
}

fn block_matrix(src: &Representation, dst: &Representation, images: impl Fn(Vertex, usize) -> Vec<Q>) -> Matrix {
    let (so, dof) = (src.offsets(), dst.offsets());
    let mut m = Matrix::zeros(dst.total_dim(), src.total_dim());
    for v in 0..src.dims().len() {
        for j in 0..src.dims()[v] {
            for (i, x) in images(v, j).into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(dof[v] + i, so[v] + j, x);
                }
            }
        }
    }
    m
}

/// The minimal presentation, built by lifting the top and then the top of the kernel.
pub fn min_presentation(m: &Representation) -> Result<Presentation> {
    require_valid(m)?;
    let model = m.model();
    let proj = projectives(model)?;
    let n = m.dims().len();
    let unit_spaces: Vec<Vec<Vec<Q>>> = (0..n).map(|v| (0..m.dims()[v]).map(|i| crate::linalg::unit(m.dims()[v], i)).collect()).collect();
    let lifts = top_lifts(m, &unit_spaces);
    let p0_tops: Vec<Vertex> = lifts.iter().map(|(v, _)| *v).collect();
    let p0 = sum_of(model, &proj, &p0_tops)?;
    let idx = basis_by_ends(model);
    // P₀ → M at vertex v: the block of copy s sends path p to M_p m_s.
    let pi: Vec<Matrix> = (0..n)
        .map(|v| {
            let mut cols = Vec::new();
            for (j, x) in &lifts {
                for &b in &idx[*j][v] {
                    cols.push(m.path_matrix(&model.basis()[b]).apply(x));
                }
            }
            Matrix::from_columns(m.dims()[v], &cols)
        })
        .collect();
    let kernels: Vec<Vec<Vec<Q>>> = pi.iter().map(Matrix::kernel).collect();
    let kernel_gens = top_lifts(&p0, &kernels);
    let p1_tops: Vec<Vertex> = kernel_gens.iter().map(|(v, _)| *v).collect();
    let p1 = sum_of(model, &proj, &p1_tops)?;
    let mut a = vec![0; n];
    let mut b = vec![0; n];
    p0_tops.iter().for_each(|&v| a[v] += 1);
    p1_tops.iter().for_each(|&v| b[v] += 1);
    let cover = block_matrix(&p0, m, |v, j| pi[v].column(j));
    // P₁ → P₀: copy r sends path q to y_r · q.
    let mut copy_start = Vec::new();
    let mut seen = vec![0; n];
    for &v in &p1_tops {
        copy_start.push(seen.clone());
        for (w, s) in seen.iter_mut().enumerate() {
            *s += idx[v][w].len();
        }
    }
    let relations = block_matrix(&p1, &p0, |w, j| {
        let r = copy_start
            .iter()
            .enumerate()
            .position(|(r, st)| st[w] <= j && j < st[w] + idx[p1_tops[r]][w].len())
            .expect("in some copy");
        let (v, y) = &kernel_gens[r];
        let path = &model.basis()[idx[*v][w][j - copy_start[r][w]]];
        p0.path_matrix(path).apply(y)
    });
    Ok(Presentation { a, b, cover, relations, p0_tops, kernel_gens })
}

/// `g_M = (a_i - b_i)` from the minimal presentation.
pub fn g_vector(m: &Representation) -> Result<GVector> {
    let p = min_presentation(m)?;
    Ok(GVector(p.a.iter().zip(&p.b).map(|(&a, &b)| a as i64 - b as i64).collect()))
}

/// `dim Hom(M, N)` by solving `B_a f_{s(a)} = f_{t(a)} A_a` for all arrows.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    if m.dims().len() != n.dims().len() {
        return Err(Error::InvalidModule("modules over different quivers".into()));
    }
    let (dm, dn) = (m.dims(), n.dims());
    let mut off = Vec::with_capacity(dm.len());
    let mut unknowns = 0;
    for v in 0..dm.len() {
        off.push(unknowns);
        unknowns += dm[v] * dn[v];
    }
    if unknowns == 0 {
        return Ok(0);
    }
    let var = |v: Vertex, i: usize, j: usize| off[v] + i * dm[v] + j;
    let mut rows = Vec::new();
    for (a, arr) in m.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (am, bn) = (m.map(a as u32), n.map(a as u32));
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..dn[s] {
                    if !bn.get(i, k).is_zero() {
                        row[var(s, k, j)] += bn.get(i, k);
                    }
                }
                for k in 0..dm[t] {
                    if !am.get(k, j).is_zero() {
                        row[var(t, i, k)] -= am.get(k, j);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let rank = Echelon::spanned_by(unknowns, rows).dim();
    Ok(unknowns - rank)
}

/// `τM = D Tr M`, computed from the minimal presentation.
///
/// `Tr M` is the cokernel of `Hom(P₀, J) → Hom(P₁, J)`, a left module spanned
/// by paths ending at the tops of `P₁`; its dual is again a representation.
pub fn tau(m: &Representation) -> Result<Representation> {
    let pres = min_presentation(m)?;
    let model = m.model();
    let idx = basis_by_ends(model);
    let n = m.dims().len();
    let p1_tops: Vec<Vertex> = pres.kernel_gens.iter().map(|(v, _)| *v).collect();
    if p1_tops.is_empty() {
        return Ok(Representation::zero(model));
    }
    // y[s][r]: component of the kernel generator r in copy s of P₀, as a dense model element.
    let dimj = model.basis().len();
    let mut copy_off = vec![0; n];
    let mut y: Vec<Vec<Vec<Q>>> = Vec::new();
    let mut offsets_at: Vec<Vec<usize>> = Vec::new();
    for &j in &pres.p0_tops {
        offsets_at.push(copy_off.clone());
        for (w, o) in copy_off.iter_mut().enumerate() {
            *o += idx[j][w].len();
        }
    }
    for (s, &j) in pres.p0_tops.iter().enumerate() {
        let mut row = Vec::new();
        for (v, vec) in &pres.kernel_gens {
            let mut el = vec![Q::zero(); dimj];
            for (k, &b) in idx[j][*v].iter().enumerate() {
                el[b] = vec[offsets_at[s][*v] + k].clone();
            }
            row.push(el);
        }
        y.push(row);
    }
    // U_v = ⊕_r span of paths from v to the top of copy r.
    let u_off: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut acc = 0;
            p1_tops
                .iter()
                .map(|&i| {
                    let o = acc;
                    acc += idx[v][i].len();
                    o
                })
                .collect()
        })
        .collect();
    let u_dim: Vec<usize> = (0..n).map(|v| p1_tops.iter().map(|&i| idx[v][i].len()).sum()).collect();
    let place = |v: Vertex, r: usize, coords: &[(usize, Q)], out: &mut Vec<Q>| {
        for (k, c) in coords {
            let pos = idx[v][p1_tops[r]].iter().position(|x| x == k).expect("path between the right vertices");
            out[u_off[v][r] + pos] += c;
        }
    };
    let times = |x: usize, el: &[Q]| -> Vec<(usize, Q)> {
        let mut acc = vec![Q::zero(); dimj];
        for (b, c) in el.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in model.multiply_basis(x, b) {
                acc[k] += c * d;
            }
        }
        acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    };
    let images: Vec<Echelon> = (0..n)
        .map(|v| {
            let mut e = Echelon::new(u_dim[v]);
            for (s, &j) in pres.p0_tops.iter().enumerate() {
                for &x in &idx[v][j] {
                    let mut vec = vec![Q::zero(); u_dim[v]];
                    for r in 0..p1_tops.len() {
                        place(v, r, &times(x, &y[s][r]), &mut vec);
                    }
                    e.insert(vec);
                }
            }
            e
        })
        .collect();
    let free: Vec<Vec<usize>> = (0..n).map(|v| (0..u_dim[v]).filter(|c| !images[v].pivots().contains(c)).collect()).collect();
    let dims: Vec<usize> = free.iter().map(Vec::len).collect();
    let qv = model.quiver();
    let maps = qv
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let (v, w) = (arr.source, arr.target);
            // Left multiplication by a: L_w → L_v, then transpose.
            let mut left = Matrix::zeros(dims[v], dims[w]);
            let ext = Path::arrow(qv, a as u32);
            for (col, &f) in free[w].iter().enumerate() {
                let r = (0..p1_tops.len())
                    .find(|&r| u_off[w][r] <= f && f < u_off[w][r] + idx[w][p1_tops[r]].len())
                    .expect("some copy");
                let k = idx[w][p1_tops[r]][f - u_off[w][r]];
                let p = ext.concat(&model.basis()[k]).expect("composable");
                let mut vec = vec![Q::zero(); u_dim[v]];
                place(v, r, &model.path_coordinates(&p), &mut vec);
                let red = images[v].reduce(vec);
                for (row, &g) in free[v].iter().enumerate() {
                    left.set(row, col, red[g].clone());
                }
            }
            left.transpose()
        })
        .collect();
    Representation::new(model, dims, maps)
}

/// `Hom(M, τM) = 0`.
pub fn is_tau_rigid(m: &Representation) -> Result<bool> {
    Ok(hom_dim(m, &tau(m)?)? == 0)
}
