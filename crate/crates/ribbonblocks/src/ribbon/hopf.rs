//! Hopf backend: finite-dimensional modules over an explicitly presented
//! ribbon Hopf algebra H, with structure maps given as exact matrices over a
//! fixed basis e_0, …, e_{d−1} of H.
//!
//! The presentation space of a tensor word is the underlying vector space of
//! the module (tensor products by Kronecker index, duals as dual spaces in
//! the same index order with the action twisted by the antipode). The
//! braiding is the flip after acting with the R-matrix; the twist is the
//! action of the inverse ribbon element; the pivot is the action of the
//! grouplike g = u·v⁻¹ built from the Drinfeld element u.
//!
//! The coend K is registered automatically as the coadjoint module on H*:
//! (h·φ)(x) = φ(S(h₍₂₎)·x·h₍₁₎).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::linalg::Matrix;
use crate::scalar::FieldElement;

use super::{Morphism, ObjectExpr, COEND_NAME};

#[derive(Clone)]
pub struct HopfData {
    /// Cyclotomic order of the ground field; every scalar is order 1 or this.
    pub order: u32,
    pub dim: usize,
    /// The element 1 ∈ H, as a dim×1 column.
    pub unit: Matrix,
    /// ε: H → k, as a 1×dim row.
    pub counit: Matrix,
    /// m: H⊗H → H, dim × dim²; column i·dim+j is e_i·e_j.
    pub mult: Matrix,
    /// Δ: H → H⊗H, dim² × dim; row j·dim+k of column i is the coefficient
    /// of e_j⊗e_k in Δ(e_i).
    pub comult: Matrix,
    /// S: H → H, dim × dim, column i is S(e_i).
    pub antipode: Matrix,
    /// R ∈ H⊗H; entry (i, j) is the coefficient of e_i⊗e_j.
    pub r_matrix: Matrix,
    /// The ribbon element v ∈ H, as a dim×1 column.
    pub ribbon: Matrix,
    /// Named modules: for each, the action matrices [ρ(e_0), …, ρ(e_{d−1})].
    pub modules: BTreeMap<String, Vec<Matrix>>,
}

#[derive(Default)]
struct HopfCaches {
    rep: BTreeMap<ObjectExpr, Rc<Vec<Matrix>>>,
}

pub struct HopfCat {
    pub data: HopfData,
    /// S⁻¹ as a matrix.
    pub antipode_inv: Matrix,
    /// v⁻¹ ∈ H.
    pub ribbon_inv: Matrix,
    /// Drinfeld element u = Σ S(R⁽²⁾)·R⁽¹⁾ and its inverse.
    pub drinfeld: Matrix,
    pub drinfeld_inv: Matrix,
    /// The pivotal grouplike g = u·v⁻¹ and its inverse.
    pub grouplike: Matrix,
    pub grouplike_inv: Matrix,
    caches: RefCell<HopfCaches>,
}

impl Clone for HopfCat {
    fn clone(&self) -> Self {
        HopfCat {
            data: self.data.clone(),
            antipode_inv: self.antipode_inv.clone(),
            ribbon_inv: self.ribbon_inv.clone(),
            drinfeld: self.drinfeld.clone(),
            drinfeld_inv: self.drinfeld_inv.clone(),
            grouplike: self.grouplike.clone(),
            grouplike_inv: self.grouplike_inv.clone(),
            caches: RefCell::new(HopfCaches::default()),
        }
    }
}

fn basis_vec(d: usize, i: usize) -> Matrix {
    let mut m = Matrix::zeros(d, 1);
    m.set(i, 0, FieldElement::one());
    m
}

/// Permutation matrix sending index a·dy+b (V⊗W) to b·dx+a (W⊗V).
fn flip_perm(dx: usize, dy: usize) -> Matrix {
    let mut p = Matrix::zeros(dx * dy, dx * dy);
    for a in 0..dx {
        for b in 0..dy {
            p.set(b * dx + a, a * dy + b, FieldElement::one());
        }
    }
    p
}

impl HopfCat {
    pub fn new(data: HopfData) -> Result<Self, String> {
        let mut data = data;
        validate_shape(&mut data)?;
        let d = data.dim;
        let antipode_inv = data
            .antipode
            .inverse()
            .ok_or_else(|| String::from("antipode is not invertible"))?;
        // Register the coend K = H* with the coadjoint action before
        // computing anything that might want it.
        let coadj = coadjoint_module(&data);
        data.modules.insert(String::from(COEND_NAME), coadj);

        let left_v = left_mult_matrix(&data, &data.ribbon);
        let ribbon_inv = left_v
            .solve(&data.unit)
            .ok_or_else(|| String::from("ribbon element is not invertible"))?;
        // u = Σ_ij R_ij S(e_j)·e_i
        let mut drinfeld = Matrix::zeros(d, 1);
        for i in 0..d {
            for j in 0..d {
                let r = data.r_matrix.get(i, j);
                if r.is_zero() {
                    continue;
                }
                let sj = Matrix::col_vec(data.antipode.column(j));
                let prod = element_mult_raw(&data, &sj, &basis_vec(d, i));
                drinfeld = drinfeld.add(&prod.scale(r));
            }
        }
        let left_u = left_mult_matrix(&data, &drinfeld);
        let drinfeld_inv = left_u
            .solve(&data.unit)
            .ok_or_else(|| String::from("Drinfeld element is not invertible"))?;
        let grouplike = element_mult_raw(&data, &drinfeld, &ribbon_inv);
        let left_g = left_mult_matrix(&data, &grouplike);
        let grouplike_inv = left_g
            .solve(&data.unit)
            .ok_or_else(|| String::from("pivotal grouplike is not invertible"))?;
        Ok(HopfCat {
            data,
            antipode_inv,
            ribbon_inv,
            drinfeld,
            drinfeld_inv,
            grouplike,
            grouplike_inv,
            caches: RefCell::new(HopfCaches::default()),
        })
    }

    // -- element arithmetic ---------------------------------------------------

    pub fn element_mult(&self, a: &Matrix, b: &Matrix) -> Matrix {
        element_mult_raw(&self.data, a, b)
    }

    pub fn element_antipode(&self, a: &Matrix) -> Matrix {
        self.data.antipode.mul(a)
    }

    pub fn element_counit(&self, a: &Matrix) -> FieldElement {
        self.data.counit.mul(a).get(0, 0).clone()
    }

    /// Δ(a) as a dim²×1 column (row j·dim+k = e_j⊗e_k coefficient).
    pub fn element_comult(&self, a: &Matrix) -> Matrix {
        self.data.comult.mul(a)
    }

    pub fn left_mult_matrix(&self, h: &Matrix) -> Matrix {
        left_mult_matrix(&self.data, h)
    }

    pub fn right_mult_matrix(&self, h: &Matrix) -> Matrix {
        right_mult_matrix(&self.data, h)
    }

    // -- representations ------------------------------------------------------

    fn module_dim(&self, name: &str) -> usize {
        self.data.modules[name][0].rows()
    }

    pub fn presentation_dim(&self, x: &ObjectExpr) -> usize {
        x.atoms.iter().map(|a| self.module_dim(&a.name)).product()
    }

    /// Action matrices [ρ(e_i)] of the word module presented by `x`.
    pub fn rep(&self, x: &ObjectExpr) -> Rc<Vec<Matrix>> {
        if let Some(hit) = self.caches.borrow().rep.get(x) {
            return hit.clone();
        }
        let d = self.data.dim;
        let result: Vec<Matrix> = if x.atoms.is_empty() {
            (0..d)
                .map(|i| {
                    let mut m = Matrix::zeros(1, 1);
                    m.set(0, 0, self.data.counit.get(0, i).clone());
                    m
                })
                .collect()
        } else if x.atoms.len() == 1 {
            let atom = &x.atoms[0];
            let mut base = self.data.modules[&atom.name].clone();
            let steps = atom.dual.abs();
            for _ in 0..steps {
                let s = if atom.dual > 0 { &self.data.antipode } else { &self.antipode_inv };
                base = dual_rep(&base, s);
            }
            base
        } else {
            let (first, rest) = x.split(1);
            let ra = self.rep(&first);
            let rr = self.rep(&rest);
            let ma = ra[0].rows();
            let mr = rr[0].rows();
            (0..d)
                .map(|i| {
                    let mut acc = Matrix::zeros(ma * mr, ma * mr);
                    for j in 0..d {
                        for k in 0..d {
                            let c = self.data.comult.get(j * d + k, i);
                            if c.is_zero() {
                                continue;
                            }
                            acc = acc.add(&ra[j].kron(&rr[k]).scale(c));
                        }
                    }
                    acc
                })
                .collect()
        };
        let rc = Rc::new(result);
        self.caches.borrow_mut().rep.insert(x.clone(), rc.clone());
        rc
    }

    /// Action of an element h ∈ H on the word module of `x`.
    pub fn act_element(&self, x: &ObjectExpr, h: &Matrix) -> Matrix {
        let rep = self.rep(x);
        let m = self.presentation_dim(x);
        let mut acc = Matrix::zeros(m, m);
        for i in 0..self.data.dim {
            let c = h.get(i, 0);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&rep[i].scale(c));
        }
        acc
    }

    // -- structural morphisms ---------------------------------------------------

    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        Morphism::new(
            f.dom.tensor(&g.dom),
            f.cod.tensor(&g.cod),
            f.mat.kron(&g.mat),
        )
    }

    pub fn braiding(&self, x: &ObjectExpr, y: &ObjectExpr) -> Morphism {
        let rx = self.rep(x);
        let ry = self.rep(y);
        let dx = self.presentation_dim(x);
        let dy = self.presentation_dim(y);
        let mut acted = Matrix::zeros(dx * dy, dx * dy);
        for i in 0..self.data.dim {
            for j in 0..self.data.dim {
                let r = self.data.r_matrix.get(i, j);
                if r.is_zero() {
                    continue;
                }
                acted = acted.add(&rx[i].kron(&ry[j]).scale(r));
            }
        }
        let mat = flip_perm(dx, dy).mul(&acted);
        Morphism::new(x.tensor(y), y.tensor(x), mat)
    }

    pub fn twist(&self, x: &ObjectExpr, inverted: bool) -> Morphism {
        let h = if inverted { &self.data.ribbon } else { &self.ribbon_inv };
        Morphism::new(x.clone(), x.clone(), self.act_element(x, h))
    }

    pub fn pivot(&self, x: &ObjectExpr, inverted: bool) -> Morphism {
        if inverted {
            Morphism::new(x.dual().dual(), x.clone(), self.act_element(x, &self.grouplike_inv))
        } else {
            Morphism::new(x.clone(), x.dual().dual(), self.act_element(x, &self.grouplike))
        }
    }

    /// b_X: 1 → X⊗X^∨ by basis pairing: Σ_I e_I ⊗ e^I, where the dual word
    /// runs through the letters in reverse order.
    pub fn coev(&self, x: &ObjectExpr) -> Morphism {
        let dims: Vec<usize> = x.atoms.iter().map(|a| self.module_dim(&a.name)).collect();
        let total: usize = dims.iter().product();
        let cod = x.tensor(&x.dual());
        let mut mat = Matrix::zeros(total * total, 1);
        for flat in 0..total {
            let idx = unflatten(flat, &dims);
            let mut rev_dims: Vec<usize> = dims.clone();
            rev_dims.reverse();
            let mut rev_idx: Vec<usize> = idx.clone();
            rev_idx.reverse();
            let j = flatten(&rev_idx, &rev_dims);
            mat.set(flat * total + j, 0, FieldElement::one());
        }
        Morphism::new(ObjectExpr::unit(), cod, mat)
    }

    /// d_X: X^∨⊗X → 1 by evaluation of matched letters.
    pub fn ev(&self, x: &ObjectExpr) -> Morphism {
        let dims: Vec<usize> = x.atoms.iter().map(|a| self.module_dim(&a.name)).collect();
        let total: usize = dims.iter().product();
        let dom = x.dual().tensor(x);
        let mut mat = Matrix::zeros(1, total * total);
        for flat in 0..total {
            let idx = unflatten(flat, &dims);
            let mut rev_dims: Vec<usize> = dims.clone();
            rev_dims.reverse();
            let mut rev_idx: Vec<usize> = idx.clone();
            rev_idx.reverse();
            let j = flatten(&rev_idx, &rev_dims);
            mat.set(0, j * total + flat, FieldElement::one());
        }
        Morphism::new(dom, ObjectExpr::unit(), mat)
    }

    pub fn hom_from_unit(&self, x: &ObjectExpr) -> Vec<Morphism> {
        let rep = self.rep(x);
        let m = self.presentation_dim(x);
        let d = self.data.dim;
        let mut system = Matrix::zeros(0, m);
        for i in 0..d {
            let eps = self.data.counit.get(0, i);
            system = system.vstack(&rep[i].sub(&Matrix::identity(m).scale(eps)));
        }
        let null = system.nullspace();
        (0..null.cols())
            .map(|c| {
                Morphism::new(ObjectExpr::unit(), x.clone(), Matrix::col_vec(null.column(c)))
            })
            .collect()
    }

    pub fn hom_space(&self, x: &ObjectExpr, y: &ObjectExpr) -> Vec<Morphism> {
        let rx = self.rep(x);
        let ry = self.rep(y);
        let mx = self.presentation_dim(x);
        let my = self.presentation_dim(y);
        let d = self.data.dim;
        // Unknown M is my×mx, flattened row-major: M[r][c] ↦ r·mx+c.
        let mut sys = Matrix::zeros(d * my * mx, my * mx);
        for i in 0..d {
            for a in 0..my {
                for b in 0..mx {
                    let row = (i * my + a) * mx + b;
                    // (ρ_y(e_i)·M − M·ρ_x(e_i))[a][b]
                    for r in 0..my {
                        let c1 = ry[i].get(a, r);
                        if !c1.is_zero() {
                            let col = r * mx + b;
                            let cur = sys.get(row, col) + c1;
                            sys.set(row, col, cur);
                        }
                    }
                    for s in 0..mx {
                        let c2 = rx[i].get(s, b);
                        if !c2.is_zero() {
                            let col = a * mx + s;
                            let cur = sys.get(row, col) - c2;
                            sys.set(row, col, cur);
                        }
                    }
                }
            }
        }
        let null = sys.nullspace();
        (0..null.cols())
            .map(|ci| {
                let mat = Matrix::from_fn(my, mx, |r, c| null.get(r * mx + c, ci).clone());
                Morphism::new(x.clone(), y.clone(), mat)
            })
            .collect()
    }
}

fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec_of_zeros(dims.len());
    for k in (0..dims.len()).rev() {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    idx
}

fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    let mut flat = 0;
    for (i, d) in idx.iter().zip(dims.iter()) {
        flat = flat * d + i;
    }
    flat
}

fn vec_of_zeros(n: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(n);
    v.resize(n, 0);
    v
}

fn element_mult_raw(data: &HopfData, a: &Matrix, b: &Matrix) -> Matrix {
    data.mult.mul(&a.kron(b))
}

/// Matrix of x ↦ h·x on H.
fn left_mult_matrix(data: &HopfData, h: &Matrix) -> Matrix {
    data.mult.mul(&h.kron(&Matrix::identity(data.dim)))
}

/// Matrix of x ↦ x·h on H.
fn right_mult_matrix(data: &HopfData, h: &Matrix) -> Matrix {
    data.mult.mul(&Matrix::identity(data.dim).kron(h))
}

/// Dual module action: ρ_{V^∨}(e_i) = Σ_j S[j][i] · ρ_V(e_j)ᵀ.
fn dual_rep(base: &[Matrix], s: &Matrix) -> Vec<Matrix> {
    let d = s.rows();
    let m = base[0].rows();
    (0..d)
        .map(|i| {
            let mut acc = Matrix::zeros(m, m);
            for j in 0..d {
                let c = s.get(j, i);
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&base[j].transpose().scale(c));
            }
            acc
        })
        .collect()
}

/// The coadjoint H-module on H*: (h·φ)(x) = φ(S(h₍₂₎)·x·h₍₁₎); in dual-basis
/// matrices, ρ(e_i) = Σ_{j,k} Δ(e_i)[j,k] · (R_j·L_k)ᵀ with L_k left
/// multiplication by S(e_k) and R_j right multiplication by e_j.
fn coadjoint_module(data: &HopfData) -> Vec<Matrix> {
    let d = data.dim;
    let lefts: Vec<Matrix> = (0..d)
        .map(|k| left_mult_matrix(data, &Matrix::col_vec(data.antipode.column(k))))
        .collect();
    let rights: Vec<Matrix> = (0..d)
        .map(|j| right_mult_matrix(data, &basis_vec(d, j)))
        .collect();
    (0..d)
        .map(|i| {
            let mut acc = Matrix::zeros(d, d);
            for j in 0..d {
                for k in 0..d {
                    let c = data.comult.get(j * d + k, i);
                    if c.is_zero() {
                        continue;
                    }
                    acc = acc.add(&rights[j].mul(&lefts[k]).transpose().scale(c));
                }
            }
            acc
        })
        .collect()
}

fn validate_shape(data: &mut HopfData) -> Result<(), String> {
    let d = data.dim;
    if d == 0 {
        return Err("algebra dimension must be positive".into());
    }
    let dims_ok = data.unit.rows() == d
        && data.unit.cols() == 1
        && data.counit.rows() == 1
        && data.counit.cols() == d
        && data.mult.rows() == d
        && data.mult.cols() == d * d
        && data.comult.rows() == d * d
        && data.comult.cols() == d
        && data.antipode.rows() == d
        && data.antipode.cols() == d
        && data.r_matrix.rows() == d
        && data.r_matrix.cols() == d
        && data.ribbon.rows() == d
        && data.ribbon.cols() == 1;
    if !dims_ok {
        return Err("structure matrix dimensions are inconsistent".into());
    }
    if data.modules.contains_key(COEND_NAME) {
        return Err(format!("module name {COEND_NAME:?} is reserved for the coend"));
    }
    for (name, mats) in &data.modules {
        if mats.len() != d {
            return Err(format!("module {name:?} must list one matrix per basis element"));
        }
        let m = mats[0].rows();
        if m == 0 || mats.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(format!("module {name:?} has inconsistent action matrices"));
        }
        // ρ(1) = id is structural; the algebra-map property is an axiom
        // check, but a module that fails this is unusable from the start.
        let mut unit_action = Matrix::zeros(m, m);
        for i in 0..d {
            let c = data.unit.get(i, 0);
            if !c.is_zero() {
                unit_action = unit_action.add(&mats[i].scale(c));
            }
        }
        if !unit_action.is_identity() {
            return Err(format!("module {name:?}: the unit does not act as identity"));
        }
    }
    // Scalar orders.
    let ord = data.order;
    let check = |m: &Matrix| -> bool {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let o = m.get(r, c).order();
                if o != 1 && o != ord {
                    return false;
                }
            }
        }
        true
    };
    let all_ok = check(&data.unit)
        && check(&data.counit)
        && check(&data.mult)
        && check(&data.comult)
        && check(&data.antipode)
        && check(&data.r_matrix)
        && check(&data.ribbon)
        && data.modules.values().all(|ms| ms.iter().all(check));
    if !all_ok {
        return Err("scalar with a cyclotomic order foreign to the algebra".into());
    }
    Ok(())
}
