//! Axiom verification for category data.
//!
//! Every sample or user-supplied category is run through these checks before
//! anything downstream trusts it. Failures are reported per named axiom with
//! enough detail to locate the offending datum. The checks are exact: a
//! single wrong scalar in an F-symbol, R-symbol, twist, structure constant
//! or action matrix makes at least one named item fail.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar::FieldElement;

use super::hopf::HopfCat;
use super::skeletal::SkeletalCat;
use super::{Category, Morphism, ObjectExpr};

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub items: Vec<CheckItem>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.into(), ok, detail: detail.into() });
    }

    pub fn require(&mut self, name: impl Into<String>, ok: bool) {
        self.push(name, ok, if ok { String::new() } else { String::from("identity failed") });
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|i| !i.ok).collect()
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.items.extend(other.items);
    }
}

fn eq_check(rep: &mut AxiomReport, name: String, lhs: &Morphism, rhs: &Morphism) {
    let ok = lhs == rhs;
    let detail = if ok {
        String::new()
    } else if lhs.dom != rhs.dom || lhs.cod != rhs.cod {
        format!("domain/codomain mismatch: {:?}→{:?} vs {:?}→{:?}", lhs.dom, lhs.cod, rhs.dom, rhs.cod)
    } else {
        String::from("matrices differ")
    };
    rep.push(name, ok, detail);
}

// ---------------------------------------------------------------------------
// Shared categorical checks (either backend).
// ---------------------------------------------------------------------------

/// Zigzag identities, twist/pivot/duality compatibilities and naturality
/// probes, run through the uniform interface.
fn categorical_suite(
    rep: &mut AxiomReport,
    cat: &Category,
    zig_objs: &[ObjectExpr],
    pair_objs: &[(ObjectExpr, ObjectExpr)],
    hex_triples: &[(ObjectExpr, ObjectExpr, ObjectExpr)],
    nat_pairs: &[(ObjectExpr, ObjectExpr)],
) {
    for x in zig_objs {
        let xd = x.dual();
        let idx = cat.id(x);
        let idxd = cat.id(&xd);
        let b = cat.coev(x);
        let d = cat.ev(x);
        // (id ⊗ d) ∘ (b ⊗ id) = id
        let z1 = cat.compose(
            &cat.tensor(&idx, &d),
            &cat.tensor(&b, &idx),
        );
        eq_check(rep, format!("zigzag-right-1[{x:?}]"), &z1, &idx);
        // (d ⊗ id) ∘ (id ⊗ b) = id on X^∨
        let z2 = cat.compose(
            &cat.tensor(&d, &idxd),
            &cat.tensor(&idxd, &b),
        );
        eq_check(rep, format!("zigzag-right-2[{x:?}]"), &z2, &idxd);
        // Left duality from the pivot: b' = (id⊗π⁻¹)∘b_{X^∨}, d' = d_{X^∨}∘(π⊗id).
        let bl = cat.coev_left(x);
        let dl = cat.ev_left(x);
        // (d' ⊗ id) ∘ (id ⊗ b') = id
        let z3 = cat.compose(
            &cat.tensor(&dl, &idx),
            &cat.tensor(&idx, &bl),
        );
        eq_check(rep, format!("zigzag-left-1[{x:?}]"), &z3, &idx);
        // (id ⊗ d') ∘ (b' ⊗ id) = id on X^∨
        let z4 = cat.compose(
            &cat.tensor(&idxd, &dl),
            &cat.tensor(&bl, &idxd),
        );
        eq_check(rep, format!("zigzag-left-2[{x:?}]"), &z4, &idxd);
        // The curl: θ_X = (id_X ⊗ d'_X) ∘ (c_{X,X} ⊗ id_{X^∨}) ∘ (id_X ⊗ b_X).
        let curl = cat.chain(&[
            &cat.tensor(&idx, &dl),
            &cat.tensor(&cat.braiding(x, x), &idxd),
            &cat.tensor(&idx, &b),
        ]);
        eq_check(rep, format!("twist-curl[{x:?}]"), &curl, &cat.twist(x));
        // θ_{X^∨} = (θ_X)^∨
        let td = cat.twist(&xd);
        let tt = cat.transpose(&cat.twist(x));
        eq_check(rep, format!("twist-dual[{x:?}]"), &td, &tt);
        // θ_X ∘ θ_X⁻¹ = id
        let inv = cat.compose(&cat.twist(x), &cat.twist_inv(x));
        eq_check(rep, format!("twist-invertible[{x:?}]"), &inv, &idx);
        // Tensoring with the unit is strict.
        let unit = ObjectExpr::unit();
        let f = cat.twist(x);
        eq_check(
            rep,
            format!("unit-strict[{x:?}]"),
            &cat.tensor(&f, &cat.id(&unit)),
            &f,
        );
        eq_check(
            rep,
            format!("unit-strict'[{x:?}]"),
            &cat.tensor(&cat.id(&unit), &f),
            &f,
        );
    }

    for (x, y) in pair_objs {
        // θ_{X⊗Y} = c_{Y,X} ∘ c_{X,Y} ∘ (θ_X ⊗ θ_Y)
        let xy = x.tensor(y);
        let lhs = cat.twist(&xy);
        let rhs = cat.chain(&[
            &cat.braiding(y, x),
            &cat.braiding(x, y),
            &cat.tensor(&cat.twist(x), &cat.twist(y)),
        ]);
        eq_check(rep, format!("twist-braiding[{x:?};{y:?}]"), &lhs, &rhs);
        // π_{X⊗Y} = π_X ⊗ π_Y
        let pm = cat.pivot(&xy);
        let pt = cat.tensor(&cat.pivot(x), &cat.pivot(y));
        eq_check(rep, format!("pivot-monoidal[{x:?};{y:?}]"), &pm, &pt);
    }

    for (x, y, z) in hex_triples {
        let yz = y.tensor(z);
        let xy = x.tensor(y);
        // c_{X,Y⊗Z} = (id_Y ⊗ c_{X,Z}) ∘ (c_{X,Y} ⊗ id_Z)
        let h1l = cat.braiding(x, &yz);
        let h1r = cat.compose(
            &cat.tensor(&cat.id(y), &cat.braiding(x, z)),
            &cat.tensor(&cat.braiding(x, y), &cat.id(z)),
        );
        eq_check(rep, format!("hexagon-1[{x:?};{y:?};{z:?}]"), &h1l, &h1r);
        // c_{X⊗Y,Z} = (c_{X,Z} ⊗ id_Y) ∘ (id_X ⊗ c_{Y,Z})
        let h2l = cat.braiding(&xy, z);
        let h2r = cat.compose(
            &cat.tensor(&cat.braiding(x, z), &cat.id(y)),
            &cat.tensor(&cat.id(x), &cat.braiding(y, z)),
        );
        eq_check(rep, format!("hexagon-2[{x:?};{y:?};{z:?}]"), &h2l, &h2r);
    }

    for (x, y) in nat_pairs {
        let homs = cat.hom_space(x, y);
        for (k, f) in homs.iter().take(2).enumerate() {
            // Twist naturality: θ_Y ∘ f = f ∘ θ_X.
            let lhs = cat.compose(&cat.twist(y), f);
            let rhs = cat.compose(f, &cat.twist(x));
            eq_check(rep, format!("twist-natural[{x:?}→{y:?}#{k}]"), &lhs, &rhs);
            // Pivot naturality: π_Y ∘ f = f^∨∨ ∘ π_X.
            let lhs = cat.compose(&cat.pivot(y), f);
            let rhs = cat.compose(&cat.transpose(&cat.transpose(f)), &cat.pivot(x));
            eq_check(rep, format!("pivot-natural[{x:?}→{y:?}#{k}]"), &lhs, &rhs);
            // Braiding naturality in the first slot: c_{Y,Z} ∘ (f⊗id) =
            // (id⊗f) ∘ c_{X,Z} with Z = X.
            let lhs = cat.compose(&cat.braiding(y, x), &cat.tensor(f, &cat.id(x)));
            let rhs = cat.compose(&cat.tensor(&cat.id(x), f), &cat.braiding(x, x));
            eq_check(rep, format!("braiding-natural[{x:?}→{y:?}#{k}]"), &lhs, &rhs);
        }
    }
}

// ---------------------------------------------------------------------------
// Skeletal checks.
// ---------------------------------------------------------------------------

/// Pentagon probe through the glue construction: for simple atoms X, Y, Z,
/// compare the two bracketed glue paths into P(X⊗Y⊗Z); they must differ by
/// exactly the declared associator coefficients.
fn pentagon_probe(rep: &mut AxiomReport, cat: &SkeletalCat, a: &str, b: &str, c: &str) {
    let x = ObjectExpr::atom(a);
    let y = ObjectExpr::atom(b);
    let z = ObjectExpr::atom(c);
    let xy = x.tensor(&y);
    let yz = y.tensor(&z);
    let a = String::from(a);
    let b = String::from(b);
    let c = String::from(c);

    let g_xy = cat.glue(&x, &y);
    let g_xy_z = cat.glue(&xy, &z);
    let g_yz = cat.glue(&y, &z);
    let g_x_yz = cat.glue(&x, &yz);

    let dim = g_xy_z.to_left.rows();

    // Left path vector for (e, d): glue X,Y at charge e, then glue with Z at
    // top charge d.
    let left_vec = |e: &String, d: &String| -> Matrix {
        let ecol = g_xy.col_of[&(0usize, 0usize, 0usize, 0usize, e.clone())];
        let mut v = Matrix::zeros(dim, 1);
        for ti in 0..g_xy.to_left.rows() {
            let w = g_xy.to_left.get(ti, ecol);
            if w.is_zero() {
                continue;
            }
            let col2 = g_xy_z.col_of[&(0usize, ti, 0usize, 0usize, d.clone())];
            for r in 0..dim {
                let add = g_xy_z.to_left.get(r, col2) * w;
                if !add.is_zero() {
                    let cur = v.get(r, 0) + &add;
                    v.set(r, 0, cur);
                }
            }
        }
        v
    };
    let right_vec = |f: &String, d: &String| -> Matrix {
        let fcol = g_yz.col_of[&(0usize, 0usize, 0usize, 0usize, f.clone())];
        let mut v = Matrix::zeros(dim, 1);
        for tj in 0..g_yz.to_left.rows() {
            let w = g_yz.to_left.get(tj, fcol);
            if w.is_zero() {
                continue;
            }
            let col2 = g_x_yz.col_of[&(0usize, 0usize, 0usize, tj, d.clone())];
            for r in 0..dim {
                let add = g_x_yz.to_left.get(r, col2) * w;
                if !add.is_zero() {
                    let cur = v.get(r, 0) + &add;
                    v.set(r, 0, cur);
                }
            }
        }
        v
    };

    let mut ok = true;
    let mut detail = String::new();
    for e in cat.fuse(&a, &b) {
        for d in cat.fuse(&e, &c) {
            let lhs = left_vec(&e, &d);
            let mut rhs = Matrix::zeros(dim, 1);
            for f in cat.fuse(&b, &c) {
                let coeff = cat.f_symbol(&a, &b, &c, &d, &e, &f);
                if coeff.is_zero() {
                    continue;
                }
                rhs = rhs.add(&right_vec(&f, &d).scale(&coeff));
            }
            if lhs != rhs {
                ok = false;
                detail = format!("paths disagree at e={e:?}, d={d:?}");
            }
        }
    }
    rep.push(format!("pentagon[{a};{b};{c}]"), ok, detail);
}

pub fn check_skeletal(cat: &SkeletalCat) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let simples = cat.data.simples.clone();

    // Pentagon probes over all simple triples.
    for a in &simples {
        for b in &simples {
            for c in &simples {
                pentagon_probe(&mut rep, cat, a, b, c);
            }
        }
    }

    let as_cat = Category::Skeletal(cat.clone());

    // Hexagons over all simple triples, at the matrix level.
    let mut hex = Vec::new();
    for a in &simples {
        for b in &simples {
            for c in &simples {
                hex.push((ObjectExpr::atom(a), ObjectExpr::atom(b), ObjectExpr::atom(c)));
            }
        }
    }

    // Zigzag / twist objects: simple atoms, named sums (including the coend),
    // and one two-letter word.
    let mut zig: Vec<ObjectExpr> = simples.iter().map(|s| ObjectExpr::atom(s)).collect();
    for name in cat.data.sums.keys() {
        zig.push(ObjectExpr::atom(name));
    }
    if simples.len() >= 2 {
        zig.push(ObjectExpr::atom(&simples[0]).tensor(&ObjectExpr::atom(&simples[1])));
    }

    let mut pairs = Vec::new();
    for a in &simples {
        for b in &simples {
            pairs.push((ObjectExpr::atom(a), ObjectExpr::atom(b)));
        }
    }
    for name in cat.data.sums.keys() {
        pairs.push((ObjectExpr::atom(name), ObjectExpr::atom(name)));
    }

    // Naturality probes across objects with interesting hom spaces.
    let mut nat = Vec::new();
    for name in cat.data.sums.keys() {
        nat.push((ObjectExpr::atom(name), ObjectExpr::atom(name)));
    }
    if let Some(first) = simples.first() {
        let w = ObjectExpr::atom(first).tensor(&ObjectExpr::atom(first));
        nat.push((w.clone(), w));
    }

    categorical_suite(&mut rep, &as_cat, &zig, &pairs, &hex, &nat);
    rep
}

// ---------------------------------------------------------------------------
// Hopf checks.
// ---------------------------------------------------------------------------

fn basis_vec(d: usize, i: usize) -> Matrix {
    let mut m = Matrix::zeros(d, 1);
    m.set(i, 0, FieldElement::one());
    m
}

/// Product in H⊗H of two elements given as d²×1 columns (index j·d+k).
fn h2_mult(prod: &[Vec<Matrix>], d: usize, u: &Matrix, w: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(d * d, 1);
    for a in 0..d {
        for b in 0..d {
            let cu = u.get(a * d + b, 0);
            if cu.is_zero() {
                continue;
            }
            for c in 0..d {
                for e in 0..d {
                    let cw = w.get(c * d + e, 0);
                    if cw.is_zero() {
                        continue;
                    }
                    let coeff = cu * cw;
                    let pac = &prod[a][c];
                    let pbe = &prod[b][e];
                    for q in 0..d {
                        let vq = pac.get(q, 0);
                        if vq.is_zero() {
                            continue;
                        }
                        for r in 0..d {
                            let vr = pbe.get(r, 0);
                            if vr.is_zero() {
                                continue;
                            }
                            let add = &(&coeff * vq) * vr;
                            let cur = out.get(q * d + r, 0) + &add;
                            out.set(q * d + r, 0, cur);
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn check_hopf(cat: &HopfCat) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let d = cat.data.dim;
    let data = &cat.data;

    // Product table e_i·e_j.
    let prod: Vec<Vec<Matrix>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| cat.element_mult(&basis_vec(d, i), &basis_vec(d, j)))
                .collect()
        })
        .collect();
    let lmat: Vec<Matrix> = (0..d).map(|i| cat.left_mult_matrix(&basis_vec(d, i))).collect();

    // Associativity: L(e_i·e_j) = L(e_i)·L(e_j).
    let mut ok = true;
    'assoc: for i in 0..d {
        for j in 0..d {
            if cat.left_mult_matrix(&prod[i][j]) != lmat[i].mul(&lmat[j]) {
                ok = false;
                break 'assoc;
            }
        }
    }
    rep.require("algebra-associative", ok);
    rep.require(
        "algebra-unital",
        cat.left_mult_matrix(&data.unit).is_identity()
            && cat.right_mult_matrix(&data.unit).is_identity(),
    );

    // Coassociativity and counit laws per basis element.
    let apply_delta_first = |v: &Matrix| -> Matrix {
        // H⊗H → H⊗H⊗H on the first leg.
        let mut out = Matrix::zeros(d * d * d, 1);
        for j in 0..d {
            for k in 0..d {
                let c = v.get(j * d + k, 0);
                if c.is_zero() {
                    continue;
                }
                let dj = cat.element_comult(&basis_vec(d, j));
                for p in 0..d {
                    for q in 0..d {
                        let w = dj.get(p * d + q, 0);
                        if !w.is_zero() {
                            let cur = out.get((p * d + q) * d + k, 0) + &(c * w);
                            out.set((p * d + q) * d + k, 0, cur);
                        }
                    }
                }
            }
        }
        out
    };
    let apply_delta_second = |v: &Matrix| -> Matrix {
        let mut out = Matrix::zeros(d * d * d, 1);
        for j in 0..d {
            for k in 0..d {
                let c = v.get(j * d + k, 0);
                if c.is_zero() {
                    continue;
                }
                let dk = cat.element_comult(&basis_vec(d, k));
                for p in 0..d {
                    for q in 0..d {
                        let w = dk.get(p * d + q, 0);
                        if !w.is_zero() {
                            let cur = out.get((j * d + p) * d + q, 0) + &(c * w);
                            out.set((j * d + p) * d + q, 0, cur);
                        }
                    }
                }
            }
        }
        out
    };
    let mut coassoc = true;
    let mut counit_laws = true;
    for i in 0..d {
        let di = cat.element_comult(&basis_vec(d, i));
        if apply_delta_first(&di) != apply_delta_second(&di) {
            coassoc = false;
        }
        // (ε⊗id)Δ = id = (id⊗ε)Δ
        let mut left = Matrix::zeros(d, 1);
        let mut right = Matrix::zeros(d, 1);
        for j in 0..d {
            for k in 0..d {
                let c = di.get(j * d + k, 0);
                if c.is_zero() {
                    continue;
                }
                let cur = left.get(k, 0) + &(c * data.counit.get(0, j));
                left.set(k, 0, cur);
                let cur = right.get(j, 0) + &(c * data.counit.get(0, k));
                right.set(j, 0, cur);
            }
        }
        if left != basis_vec(d, i) || right != basis_vec(d, i) {
            counit_laws = false;
        }
    }
    rep.require("coalgebra-coassociative", coassoc);
    rep.require("coalgebra-counital", counit_laws);

    // Bialgebra: Δ and ε are algebra maps; Δ(1) = 1⊗1, ε(1) = 1.
    let mut delta_alg = true;
    let mut eps_alg = true;
    for i in 0..d {
        for j in 0..d {
            let lhs = cat.element_comult(&prod[i][j]);
            let rhs = h2_mult(
                &prod,
                d,
                &cat.element_comult(&basis_vec(d, i)),
                &cat.element_comult(&basis_vec(d, j)),
            );
            if lhs != rhs {
                delta_alg = false;
            }
            let le = cat.element_counit(&prod[i][j]);
            let re = &cat.element_counit(&basis_vec(d, i)) * &cat.element_counit(&basis_vec(d, j));
            if le != re {
                eps_alg = false;
            }
        }
    }
    rep.require("bialgebra-comult-multiplicative", delta_alg);
    rep.require("bialgebra-counit-multiplicative", eps_alg);
    rep.require(
        "bialgebra-unit-comult",
        cat.element_comult(&data.unit) == data.unit.kron(&data.unit)
            && cat.element_counit(&data.unit).is_one(),
    );

    // Antipode axioms: m(S⊗id)Δ = ε·1 = m(id⊗S)Δ.
    let mut antipode_ok = true;
    for i in 0..d {
        let di = cat.element_comult(&basis_vec(d, i));
        let mut left = Matrix::zeros(d, 1);
        let mut right = Matrix::zeros(d, 1);
        for j in 0..d {
            for k in 0..d {
                let c = di.get(j * d + k, 0);
                if c.is_zero() {
                    continue;
                }
                let sj = cat.element_antipode(&basis_vec(d, j));
                let sk = cat.element_antipode(&basis_vec(d, k));
                left = left.add(&cat.element_mult(&sj, &basis_vec(d, k)).scale(c));
                right = right.add(&cat.element_mult(&basis_vec(d, j), &sk).scale(c));
            }
        }
        let target = data.unit.scale(&cat.element_counit(&basis_vec(d, i)));
        if left != target || right != target {
            antipode_ok = false;
        }
    }
    rep.require("antipode-axiom", antipode_ok);

    // Quasi-triangularity. R as a d²-vector.
    let mut rvec = Matrix::zeros(d * d, 1);
    let mut r21 = Matrix::zeros(d * d, 1);
    for i in 0..d {
        for j in 0..d {
            rvec.set(i * d + j, 0, data.r_matrix.get(i, j).clone());
            r21.set(j * d + i, 0, data.r_matrix.get(i, j).clone());
        }
    }
    let mut intertwine = true;
    for x in 0..d {
        let dx = cat.element_comult(&basis_vec(d, x));
        let mut dxop = Matrix::zeros(d * d, 1);
        for j in 0..d {
            for k in 0..d {
                dxop.set(k * d + j, 0, dx.get(j * d + k, 0).clone());
            }
        }
        let lhs = h2_mult(&prod, d, &dxop, &rvec);
        let rhs = h2_mult(&prod, d, &rvec, &dx);
        if lhs != rhs {
            intertwine = false;
        }
    }
    rep.require("quasitriangular-intertwines", intertwine);

    // (Δ⊗id)R = R₁₃R₂₃ and (id⊗Δ)R = R₁₃R₁₂ in H⊗H⊗H.
    let mut lhs13_23 = Matrix::zeros(d * d * d, 1);
    let mut rhs13_23 = Matrix::zeros(d * d * d, 1);
    let mut lhs13_12 = Matrix::zeros(d * d * d, 1);
    let mut rhs13_12 = Matrix::zeros(d * d * d, 1);
    for i in 0..d {
        for j in 0..d {
            let r = data.r_matrix.get(i, j);
            if r.is_zero() {
                continue;
            }
            let di = cat.element_comult(&basis_vec(d, i));
            for p in 0..d {
                for q in 0..d {
                    let c = di.get(p * d + q, 0);
                    if !c.is_zero() {
                        let cur = lhs13_23.get((p * d + q) * d + j, 0) + &(r * c);
                        lhs13_23.set((p * d + q) * d + j, 0, cur);
                    }
                }
            }
            let dj = cat.element_comult(&basis_vec(d, j));
            for p in 0..d {
                for q in 0..d {
                    let c = dj.get(p * d + q, 0);
                    if !c.is_zero() {
                        let cur = lhs13_12.get((i * d + p) * d + q, 0) + &(r * c);
                        lhs13_12.set((i * d + p) * d + q, 0, cur);
                    }
                }
            }
        }
    }
    for a in 0..d {
        for b in 0..d {
            let rab = data.r_matrix.get(a, b);
            if rab.is_zero() {
                continue;
            }
            for c in 0..d {
                for e in 0..d {
                    let rce = data.r_matrix.get(c, e);
                    if rce.is_zero() {
                        continue;
                    }
                    let coeff = rab * rce;
                    // R₁₃R₂₃ = Σ e_a ⊗ e_c ⊗ (e_b·e_e)
                    for q in 0..d {
                        let v = prod[b][e].get(q, 0);
                        if !v.is_zero() {
                            let cur = rhs13_23.get((a * d + c) * d + q, 0) + &(&coeff * v);
                            rhs13_23.set((a * d + c) * d + q, 0, cur);
                        }
                    }
                    // R₁₃R₁₂ = Σ (e_a·e_c) ⊗ e_e ⊗ e_b
                    for q in 0..d {
                        let v = prod[a][c].get(q, 0);
                        if !v.is_zero() {
                            let cur = rhs13_12.get((q * d + e) * d + b, 0) + &(&coeff * v);
                            rhs13_12.set((q * d + e) * d + b, 0, cur);
                        }
                    }
                }
            }
        }
    }
    rep.require("quasitriangular-delta-first", lhs13_23 == rhs13_23);
    rep.require("quasitriangular-delta-second", lhs13_12 == rhs13_12);

    // Ribbon element: central, S(v) = v, ε(v) = 1, v² = u·S(u),
    // Δ(v) = (R₂₁R)⁻¹·(v⊗v).
    let v = &data.ribbon;
    rep.require(
        "ribbon-central",
        cat.left_mult_matrix(v) == cat.right_mult_matrix(v),
    );
    rep.require("ribbon-antipode-fixed", cat.element_antipode(v) == v.clone());
    rep.require("ribbon-counit-one", cat.element_counit(v).is_one());
    let u = &cat.drinfeld;
    let v2 = cat.element_mult(v, v);
    let usu = cat.element_mult(u, &cat.element_antipode(u));
    rep.require("ribbon-square", v2 == usu);
    {
        let m = h2_mult(&prod, d, &r21, &rvec);
        // (S⊗id)R = R⁻¹ and flip gives (R₂₁)⁻¹, so the monodromy inverse
        // has the closed form (R₂₁R)⁻¹ = R⁻¹·(R₂₁)⁻¹ — no linear solve.
        let mut rinv = Matrix::zeros(d * d, 1);
        let mut r21inv = Matrix::zeros(d * d, 1);
        for i in 0..d {
            for j in 0..d {
                let r = data.r_matrix.get(i, j);
                if r.is_zero() {
                    continue;
                }
                for p in 0..d {
                    let s = data.antipode.get(p, i);
                    if s.is_zero() {
                        continue;
                    }
                    let add = s * r;
                    let cur = rinv.get(p * d + j, 0) + &add;
                    rinv.set(p * d + j, 0, cur);
                    let cur = r21inv.get(j * d + p, 0) + &add;
                    r21inv.set(j * d + p, 0, cur);
                }
            }
        }
        let minv = h2_mult(&prod, d, &rinv, &r21inv);
        let unit2 = data.unit.kron(&data.unit);
        if h2_mult(&prod, d, &minv, &m) != unit2 {
            rep.push(
                "ribbon-comultiplication",
                false,
                "(S⊗id)R failed to invert the monodromy",
            );
        } else {
            let lhs = cat.element_comult(v);
            let rhs = h2_mult(&prod, d, &minv, &v.kron(v));
            rep.require("ribbon-comultiplication", lhs == rhs);
        }
    }

    // Drinfeld element: S²(x) = u·x·u⁻¹.
    let s2 = data.antipode.mul(&data.antipode);
    let conj = cat.left_mult_matrix(u).mul(&cat.right_mult_matrix(&cat.drinfeld_inv));
    rep.require("drinfeld-implements-s2", s2 == conj);

    // Pivotal grouplike g = u·v⁻¹.
    let g = &cat.grouplike;
    rep.require(
        "grouplike-comultiplicative",
        cat.element_comult(g) == g.kron(g) && cat.element_counit(g).is_one(),
    );
    rep.require(
        "grouplike-antipode-inverse",
        cat.element_mult(&cat.element_antipode(g), g) == data.unit,
    );

    // Modules (including the registered coend) are genuine representations.
    for (name, mats) in &data.modules {
        let mut module_ok = true;
        'module: for i in 0..d {
            for j in 0..d {
                let mut rhs = Matrix::zeros(mats[0].rows(), mats[0].cols());
                for q in 0..d {
                    let c = prod[i][j].get(q, 0);
                    if !c.is_zero() {
                        rhs = rhs.add(&mats[q].scale(c));
                    }
                }
                if mats[i].mul(&mats[j]) != rhs {
                    module_ok = false;
                    break 'module;
                }
            }
        }
        rep.push(
            format!("module-action[{name}]"),
            module_ok,
            if module_ok { String::new() } else { String::from("action is not multiplicative") },
        );
    }

    // Categorical spot checks, sized to the module dimensions.
    let as_cat = Category::Hopf(cat.clone());
    let mut zig = Vec::new();
    let mut pairs = Vec::new();
    let mut hex = Vec::new();
    let mut nat = Vec::new();
    let names: Vec<&String> = data.modules.keys().collect();
    for name in &names {
        let m = data.modules[*name][0].rows();
        if m <= 20 {
            zig.push(ObjectExpr::atom(name));
        }
    }
    for a in &names {
        for b in &names {
            let ma = data.modules[*a][0].rows();
            let mb = data.modules[*b][0].rows();
            if ma * mb <= 100 {
                pairs.push((ObjectExpr::atom(a), ObjectExpr::atom(b)));
            }
            if ma * mb <= 32 {
                nat.push((ObjectExpr::atom(a), ObjectExpr::atom(b)));
            }
            for c in &names {
                let mc = data.modules[*c][0].rows();
                if ma * mb * mc <= 512 {
                    hex.push((
                        ObjectExpr::atom(a),
                        ObjectExpr::atom(b),
                        ObjectExpr::atom(c),
                    ));
                }
            }
        }
    }
    categorical_suite(&mut rep, &as_cat, &zig, &pairs, &hex, &nat);
    rep
}
