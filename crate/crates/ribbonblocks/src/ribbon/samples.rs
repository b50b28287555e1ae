//! Bundled example categories, used by the test suite and the command-line
//! data generator. Everything here is constructed programmatically from
//! first principles so that a single wrong constant is caught by the axiom
//! checker rather than silently copied around.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar::FieldElement;

use super::hopf::{HopfCat, HopfData};
use super::skeletal::{FKey, PureWord, SkeletalCat, SkeletalData};
use super::Category;

pub fn names() -> Vec<&'static str> {
    vec!["toric", "vect", "repz2", "fib2", "dz2", "sweedler", "uqsl2"]
}

pub fn by_name(name: &str) -> Option<Category> {
    match name {
        "toric" => Some(toric()),
        "vect" => Some(vect()),
        "repz2" => Some(repz2()),
        "fib2" => Some(fib2()),
        "dz2" => Some(dz2_hopf()),
        "sweedler" => Some(sweedler_double()),
        "uqsl2" => Some(uqsl2()),
        _ => None,
    }
}

fn one() -> FieldElement {
    FieldElement::one()
}

fn m_one() -> FieldElement {
    -FieldElement::one()
}

// ---------------------------------------------------------------------------
// Toric code: the four anyons of the ℤ/2 double, skeletally.
// ---------------------------------------------------------------------------

/// Labels are (charge, flux) pairs over ℤ/2: 1=(0,0), e=(1,0), m=(0,1),
/// f=(1,1). Fusion is componentwise xor, all associators are trivial, and
/// the half-braiding is R(a,b) = (−1)^{flux(a)·charge(b)}.
pub fn toric_data() -> SkeletalData {
    let labels = ["1", "e", "m", "f"];
    let charge = |l: &str| -> i32 {
        match l {
            "e" | "f" => 1,
            _ => 0,
        }
    };
    let flux = |l: &str| -> i32 {
        match l {
            "m" | "f" => 1,
            _ => 0,
        }
    };
    let label_of = |c: i32, fl: i32| -> &'static str {
        match (c % 2 != 0, fl % 2 != 0) {
            (false, false) => "1",
            (true, false) => "e",
            (false, true) => "m",
            (true, true) => "f",
        }
    };
    let mut fusion = BTreeMap::new();
    let mut r_symbols = BTreeMap::new();
    let mut twist = BTreeMap::new();
    let mut pivot = BTreeMap::new();
    let mut dual = BTreeMap::new();
    for a in labels {
        dual.insert(String::from(a), String::from(a));
        let th = if charge(a) * flux(a) % 2 != 0 { m_one() } else { one() };
        twist.insert(String::from(a), th);
        pivot.insert(String::from(a), one());
        for b in labels {
            let c = label_of(charge(a) + charge(b), flux(a) + flux(b));
            fusion.insert((String::from(a), String::from(b)), vec![String::from(c)]);
            let r = if flux(a) * charge(b) % 2 != 0 { m_one() } else { one() };
            if !r.is_one() {
                r_symbols.insert((String::from(a), String::from(b), String::from(c)), r);
            }
        }
    }
    SkeletalData {
        order: 1,
        unit: String::from("1"),
        simples: labels.iter().map(|s| String::from(*s)).collect(),
        dual,
        fusion,
        f_symbols: BTreeMap::new(),
        r_symbols,
        twist,
        pivot,
        sums: BTreeMap::new(),
    }
}

pub fn toric() -> Category {
    Category::Skeletal(SkeletalCat::new(toric_data()).expect("toric data is well-formed"))
}

// ---------------------------------------------------------------------------
// Vect: the trivial category with one simple object.
// ---------------------------------------------------------------------------

pub fn vect_data() -> SkeletalData {
    let unit = String::from("1");
    let mut fusion = BTreeMap::new();
    fusion.insert((unit.clone(), unit.clone()), vec![unit.clone()]);
    let mut dual = BTreeMap::new();
    dual.insert(unit.clone(), unit.clone());
    let mut twist = BTreeMap::new();
    twist.insert(unit.clone(), one());
    let mut pivot = BTreeMap::new();
    pivot.insert(unit.clone(), one());
    SkeletalData {
        order: 1,
        unit,
        simples: vec![String::from("1")],
        dual,
        fusion,
        f_symbols: BTreeMap::new(),
        r_symbols: BTreeMap::new(),
        twist,
        pivot,
        sums: BTreeMap::new(),
    }
}

pub fn vect() -> Category {
    Category::Skeletal(SkeletalCat::new(vect_data()).expect("vect data is well-formed"))
}

// ---------------------------------------------------------------------------
// Rep(ℤ/2): symmetric, hence not modular — a negative control.
// ---------------------------------------------------------------------------

pub fn repz2_data() -> SkeletalData {
    let labels = ["1", "g"];
    let mut fusion = BTreeMap::new();
    let mut dual = BTreeMap::new();
    let mut twist = BTreeMap::new();
    let mut pivot = BTreeMap::new();
    for a in labels {
        dual.insert(String::from(a), String::from(a));
        twist.insert(String::from(a), one());
        pivot.insert(String::from(a), one());
        for b in labels {
            let c = if a == b { "1" } else { "g" };
            fusion.insert((String::from(a), String::from(b)), vec![String::from(c)]);
        }
    }
    SkeletalData {
        order: 1,
        unit: String::from("1"),
        simples: labels.iter().map(|s| String::from(*s)).collect(),
        dual,
        fusion,
        f_symbols: BTreeMap::new(),
        r_symbols: BTreeMap::new(),
        twist,
        pivot,
        sums: BTreeMap::new(),
    }
}

pub fn repz2() -> Category {
    Category::Skeletal(SkeletalCat::new(repz2_data()).expect("repz2 data is well-formed"))
}

// ---------------------------------------------------------------------------
// Doubled Fibonacci: the product of a Fibonacci theory with its braid-reverse,
// with all scalars exact in the 5th cyclotomic field (golden-ratio gauge).
// ---------------------------------------------------------------------------

/// 1/φ = ζ₅ + ζ₅⁴ as an exact element of ℚ(ζ₅).
fn inv_phi() -> FieldElement {
    &FieldElement::zeta_pow(5, 1) + &FieldElement::zeta_pow(5, 4)
}

/// Single-factor Fibonacci F-symbol in the gauge
/// F^{τττ}_τ = [[1/φ, 1], [1/φ, −1/φ]] (rows e, columns f, order 1, τ).
fn fib_f(a: bool, b: bool, c: bool, d: bool, e: bool, f: bool) -> FieldElement {
    // bool: is the label τ?
    let fuse = |x: bool, y: bool, z: bool| -> bool {
        // z ∈ x⊗y for Fibonacci fusion.
        match (x, y) {
            (false, false) => !z,
            (false, true) | (true, false) => z,
            (true, true) => true,
        }
    };
    if !(fuse(a, b, e) && fuse(e, c, d) && fuse(b, c, f) && fuse(a, f, d)) {
        return FieldElement::zero();
    }
    if a && b && c && d {
        match (e, f) {
            (false, false) => inv_phi(),
            (false, true) => one(),
            (true, false) => inv_phi(),
            (true, true) => -inv_phi(),
        }
    } else {
        one()
    }
}

/// Single-factor Fibonacci R-symbols; `reversed` gives the mirror braiding.
fn fib_r(a: bool, b: bool, c: bool, reversed: bool) -> FieldElement {
    if !(a && b) {
        return one();
    }
    if !reversed {
        if c {
            // R^{ττ}_τ = −ζ₅⁴
            -FieldElement::zeta_pow(5, 4)
        } else {
            // R^{ττ}_1 = ζ₅³
            FieldElement::zeta_pow(5, 3)
        }
    } else if c {
        // inverse of −ζ₅⁴
        -FieldElement::zeta_pow(5, 1)
    } else {
        FieldElement::zeta_pow(5, 2)
    }
}

pub fn fib2_data() -> SkeletalData {
    // Label (p, m): p is the forward factor, m the mirrored one.
    let labels = [(false, false), (true, false), (false, true), (true, true)];
    let name = |l: (bool, bool)| -> String {
        String::from(match l {
            (false, false) => "1",
            (true, false) => "tp",
            (false, true) => "tm",
            (true, true) => "tt",
        })
    };
    let fuse1 = |x: bool, y: bool| -> Vec<bool> {
        match (x, y) {
            (false, false) => vec![false],
            (false, true) | (true, false) => vec![true],
            (true, true) => vec![false, true],
        }
    };

    let mut fusion = BTreeMap::new();
    let mut dual = BTreeMap::new();
    let mut twist = BTreeMap::new();
    let mut pivot = BTreeMap::new();
    for &a in &labels {
        dual.insert(name(a), name(a));
        pivot.insert(name(a), one());
        // θ = θ_τ^{p} · θ_τ^{−m} with θ_τ = ζ₅².
        let mut th = one();
        if a.0 {
            th = &th * &FieldElement::zeta_pow(5, 2);
        }
        if a.1 {
            th = &th * &FieldElement::zeta_pow(5, 3);
        }
        twist.insert(name(a), th);
        for &b in &labels {
            let mut outs = Vec::new();
            for p in fuse1(a.0, b.0) {
                for m in fuse1(a.1, b.1) {
                    outs.push(name((p, m)));
                }
            }
            fusion.insert((name(a), name(b)), outs);
        }
    }

    let mut f_symbols: BTreeMap<FKey, FieldElement> = BTreeMap::new();
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                for &d in &labels {
                    for &e in &labels {
                        for &f in &labels {
                            let v1 = fib_f(a.0, b.0, c.0, d.0, e.0, f.0);
                            let v2 = fib_f(a.1, b.1, c.1, d.1, e.1, f.1);
                            if v1.is_zero() || v2.is_zero() {
                                continue;
                            }
                            let v = &v1 * &v2;
                            if !v.is_one() {
                                f_symbols.insert(
                                    (name(a), name(b), name(c), name(d), name(e), name(f)),
                                    v,
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    let mut r_symbols = BTreeMap::new();
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                let adm1 = fuse1(a.0, b.0).contains(&c.0);
                let adm2 = fuse1(a.1, b.1).contains(&c.1);
                if !(adm1 && adm2) {
                    continue;
                }
                let v = &fib_r(a.0, b.0, c.0, false) * &fib_r(a.1, b.1, c.1, true);
                if !v.is_one() {
                    r_symbols.insert((name(a), name(b), name(c)), v);
                }
            }
        }
    }

    SkeletalData {
        order: 5,
        unit: String::from("1"),
        simples: labels.iter().map(|&l| name(l)).collect(),
        dual,
        fusion,
        f_symbols,
        r_symbols,
        twist,
        pivot,
        sums: BTreeMap::new(),
    }
}

pub fn fib2() -> Category {
    Category::Skeletal(SkeletalCat::new(fib2_data()).expect("fib2 data is well-formed"))
}

/// Rebuild a skeletal category with an extra named direct-sum object.
pub fn with_sum(data: &SkeletalData, name: &str, words: Vec<PureWord>) -> Category {
    let mut data = data.clone();
    data.sums.insert(String::from(name), words);
    Category::Skeletal(SkeletalCat::new(data).expect("sum extension is well-formed"))
}

// ---------------------------------------------------------------------------
// D(ℤ/2) as an explicit ribbon Hopf algebra: basis δ_g·x for g, x ∈ ℤ/2.
// ---------------------------------------------------------------------------

pub fn dz2_data() -> HopfData {
    let d = 4usize;
    let idx = |g: usize, x: usize| -> usize { g * 2 + x };
    let mut mult = Matrix::zeros(d, d * d);
    for g1 in 0..2 {
        for x1 in 0..2 {
            for g2 in 0..2 {
                for x2 in 0..2 {
                    if g1 == g2 {
                        let i = idx(g1, x1);
                        let j = idx(g2, x2);
                        mult.set(idx(g1, (x1 + x2) % 2), i * d + j, one());
                    }
                }
            }
        }
    }
    let mut unit = Matrix::zeros(d, 1);
    unit.set(idx(0, 0), 0, one());
    unit.set(idx(1, 0), 0, one());
    let mut counit = Matrix::zeros(1, d);
    counit.set(0, idx(0, 0), one());
    counit.set(0, idx(0, 1), one());
    let mut comult = Matrix::zeros(d * d, d);
    for g in 0..2 {
        for x in 0..2 {
            for a in 0..2 {
                let b = (g + a) % 2;
                comult.set(idx(a, x) * d + idx(b, x), idx(g, x), one());
            }
        }
    }
    let antipode = Matrix::identity(d);
    // R = Σ_{g,h} (δ_g·1) ⊗ (δ_h·g)
    let mut r_matrix = Matrix::zeros(d, d);
    for g in 0..2 {
        for h in 0..2 {
            r_matrix.set(idx(g, 0), idx(h, g), one());
        }
    }
    // v = δ_0·1 + δ_1·g
    let mut ribbon = Matrix::zeros(d, 1);
    ribbon.set(idx(0, 0), 0, one());
    ribbon.set(idx(1, 1), 0, one());

    // Irreducible modules (flux, sign-of-charge): 1-dimensional.
    let mut modules = BTreeMap::new();
    let one_dim = |flux: usize, charged: bool| -> Vec<Matrix> {
        (0..d)
            .map(|i| {
                let g = i / 2;
                let x = i % 2;
                let mut m = Matrix::zeros(1, 1);
                if g == flux {
                    let val = if charged && x == 1 { m_one() } else { one() };
                    m.set(0, 0, val);
                }
                m
            })
            .collect()
    };
    modules.insert(String::from("1"), one_dim(0, false));
    modules.insert(String::from("e"), one_dim(0, true));
    modules.insert(String::from("m"), one_dim(1, false));
    modules.insert(String::from("f"), one_dim(1, true));
    // The left regular module.
    let mut regular = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = Matrix::zeros(d, 1);
        e.set(i, 0, one());
        let mut l = Matrix::zeros(d, d);
        for j in 0..d {
            let mut ej = Matrix::zeros(d, 1);
            ej.set(j, 0, one());
            let prod = mult.mul(&e.kron(&ej));
            for r in 0..d {
                let v = prod.get(r, 0);
                if !v.is_zero() {
                    l.set(r, j, v.clone());
                }
            }
        }
        regular.push(l);
    }
    modules.insert(String::from("H"), regular);

    HopfData {
        order: 1,
        dim: d,
        unit,
        counit,
        mult,
        comult,
        antipode,
        r_matrix,
        ribbon,
        modules,
    }
}

pub fn dz2_hopf() -> Category {
    Category::Hopf(HopfCat::new(dz2_data()).expect("D(Z2) data is well-formed"))
}

// ---------------------------------------------------------------------------
// The Drinfeld double of the Sweedler algebra: a 16-dimensional non-semisimple
// ribbon Hopf algebra over ℚ.
// ---------------------------------------------------------------------------

/// Minimal Hopf-algebra presentation used as input to the double.
struct HopfCore {
    dim: usize,
    unit: Matrix,
    counit: Matrix,
    mult: Matrix,
    comult: Matrix,
    antipode: Matrix,
}

/// The 4-dimensional Sweedler algebra: basis 1, g, x, gx with g² = 1,
/// x² = 0, xg = −gx; Δg = g⊗g, Δx = x⊗1 + g⊗x; S(g) = g, S(x) = −gx.
fn sweedler_core() -> HopfCore {
    let d = 4usize;
    // Basis indices: 0 = 1, 1 = g, 2 = x, 3 = gx.
    let mut mult = Matrix::zeros(d, d * d);
    let mut put = |a: usize, b: usize, c: usize, s: i64| {
        mult.set(c, a * d + b, FieldElement::from_int(s));
    };
    // Row block: products a·b.
    put(0, 0, 0, 1);
    put(0, 1, 1, 1);
    put(0, 2, 2, 1);
    put(0, 3, 3, 1);
    put(1, 0, 1, 1);
    put(1, 1, 0, 1);
    put(1, 2, 3, 1);
    put(1, 3, 2, 1);
    put(2, 0, 2, 1);
    put(2, 1, 3, -1);
    put(3, 0, 3, 1);
    put(3, 1, 2, -1);
    // x·x = x·gx = gx·x = gx·gx = 0 (no entries).
    let mut unit = Matrix::zeros(d, 1);
    unit.set(0, 0, one());
    let mut counit = Matrix::zeros(1, d);
    counit.set(0, 0, one());
    counit.set(0, 1, one());
    let mut comult = Matrix::zeros(d * d, d);
    // Δ1 = 1⊗1
    comult.set(0 * d + 0, 0, one());
    // Δg = g⊗g
    comult.set(1 * d + 1, 1, one());
    // Δx = x⊗1 + g⊗x
    comult.set(2 * d + 0, 2, one());
    comult.set(1 * d + 2, 2, one());
    // Δ(gx) = gx⊗g + 1⊗gx
    comult.set(3 * d + 1, 3, one());
    comult.set(0 * d + 3, 3, one());
    let mut antipode = Matrix::zeros(d, d);
    antipode.set(0, 0, one());
    antipode.set(1, 1, one());
    antipode.set(3, 2, m_one());
    antipode.set(2, 3, one());
    HopfCore { dim: d, unit, counit, mult, comult, antipode }
}

/// Drinfeld double of a core Hopf algebra: vector space H*⊗H with basis
/// f_i⊗e_a ↦ index i·n+a; product (p⋈h)(q⋈k) = p·(h₍₁₎⇀q↼S⁻¹(h₍₃₎)) ⋈ h₍₂₎k,
/// coproduct from Δ_{H*}^{cop}⊗Δ_H, R = Σ_i (ε⋈e_i)⊗(f_i⋈1).
fn drinfeld_double(core: &HopfCore) -> (HopfData, usize) {
    let n = core.dim;
    let dd = n * n;
    let sinv = core.antipode.inverse().expect("core antipode invertible");

    // Element products in the core.
    let cbasis = |i: usize| -> Matrix { basis_col(n, i) };
    let cmul = |a: &Matrix, b: &Matrix| -> Matrix { core.mult.mul(&a.kron(b)) };

    // w(q, r) = matrix of e_m ↦ S⁻¹(e_q)·e_m·e_r.
    let mut wmat: Vec<Vec<Matrix>> = Vec::with_capacity(n);
    for q in 0..n {
        let sq = Matrix::col_vec(sinv.column(q));
        let mut row = Vec::with_capacity(n);
        for r in 0..n {
            let mut m = Matrix::zeros(n, n);
            for mm in 0..n {
                let prod = cmul(&cmul(&sq, &cbasis(mm)), &cbasis(r));
                for t in 0..n {
                    let v = prod.get(t, 0);
                    if !v.is_zero() {
                        m.set(t, mm, v.clone());
                    }
                }
            }
            row.push(m);
        }
        wmat.push(row);
    }

    // Δ²(e_a) with coefficients over (a₁, a₂, a₃).
    let delta2 = |a: usize| -> Vec<(usize, usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let c1 = core.comult.get(p * n + q, a);
                if c1.is_zero() {
                    continue;
                }
                for r in 0..n {
                    for s in 0..n {
                        let c2 = core.comult.get(r * n + s, p);
                        if c2.is_zero() {
                            continue;
                        }
                        out.push((r, s, q, c1 * c2));
                    }
                }
            }
        }
        out
    };

    let mut mult = Matrix::zeros(dd, dd * dd);
    for i in 0..n {
        for a in 0..n {
            let col_left = i * n + a;
            let triples = delta2(a);
            for k in 0..n {
                for b in 0..n {
                    let col = col_left * dd + (k * n + b);
                    for (a1, a2, a3, c) in &triples {
                        // q'_m = w(a3, a1)[k][m]
                        // (f_i·q')_{m'} = Σ_s Δ(e_{m'})[i,s]·q'_s
                        for mp in 0..n {
                            let mut pq = FieldElement::zero();
                            for s in 0..n {
                                let dc = core.comult.get(i * n + s, mp);
                                if dc.is_zero() {
                                    continue;
                                }
                                let qs = wmat[*a3][*a1].get(k, s);
                                if qs.is_zero() {
                                    continue;
                                }
                                pq += &(dc * qs);
                            }
                            if pq.is_zero() {
                                continue;
                            }
                            let hpart = cmul(&cbasis(*a2), &cbasis(b));
                            for t in 0..n {
                                let hv = hpart.get(t, 0);
                                if hv.is_zero() {
                                    continue;
                                }
                                let row = mp * n + t;
                                let add = &(&pq * hv) * c;
                                let cur = mult.get(row, col) + &add;
                                mult.set(row, col, cur);
                            }
                        }
                    }
                }
            }
        }
    }

    let mut unit = Matrix::zeros(dd, 1);
    for m in 0..n {
        let em = core.counit.get(0, m);
        if em.is_zero() {
            continue;
        }
        for t in 0..n {
            let ut = core.unit.get(t, 0);
            if !ut.is_zero() {
                unit.set(m * n + t, 0, em * ut);
            }
        }
    }
    let mut counit = Matrix::zeros(1, dd);
    for i in 0..n {
        for a in 0..n {
            let v = &core.unit.get(i, 0).clone() * core.counit.get(0, a);
            if !v.is_zero() {
                counit.set(0, i * n + a, v);
            }
        }
    }

    let mut comult = Matrix::zeros(dd * dd, dd);
    for i in 0..n {
        for a in 0..n {
            let col = i * n + a;
            for r in 0..n {
                for s in 0..n {
                    let mu = core.mult.get(i, r * n + s);
                    if mu.is_zero() {
                        continue;
                    }
                    for p in 0..n {
                        for q in 0..n {
                            let nu = core.comult.get(p * n + q, a);
                            if nu.is_zero() {
                                continue;
                            }
                            let row = (s * n + p) * dd + (r * n + q);
                            let cur = comult.get(row, col) + &(mu * nu);
                            comult.set(row, col, cur);
                        }
                    }
                }
            }
        }
    }

    // Antipode via S(p⋈h) = (ε⋈S(h))·(p∘S⁻¹⋈1).
    let mut antipode = Matrix::zeros(dd, dd);
    for i in 0..n {
        for a in 0..n {
            let col = i * n + a;
            let mut vec1 = Matrix::zeros(dd, 1);
            for m in 0..n {
                let em = core.counit.get(0, m);
                if em.is_zero() {
                    continue;
                }
                for t in 0..n {
                    let sv = core.antipode.get(t, a);
                    if !sv.is_zero() {
                        vec1.set(m * n + t, 0, em * sv);
                    }
                }
            }
            let mut vec2 = Matrix::zeros(dd, 1);
            for m in 0..n {
                let c = sinv.get(i, m);
                if c.is_zero() {
                    continue;
                }
                for t in 0..n {
                    let ut = core.unit.get(t, 0);
                    if !ut.is_zero() {
                        vec2.set(m * n + t, 0, c * ut);
                    }
                }
            }
            let out = mult.mul(&vec1.kron(&vec2));
            for r in 0..dd {
                let v = out.get(r, 0);
                if !v.is_zero() {
                    antipode.set(r, col, v.clone());
                }
            }
        }
    }

    // R = Σ_i (ε⋈e_i) ⊗ (f_i⋈1)
    let mut r_matrix = Matrix::zeros(dd, dd);
    for i in 0..n {
        for m in 0..n {
            let em = core.counit.get(0, m);
            if em.is_zero() {
                continue;
            }
            for t in 0..n {
                let ut = core.unit.get(t, 0);
                if ut.is_zero() {
                    continue;
                }
                let cur = r_matrix.get(m * n + i, i * n + t) + &(em * ut);
                r_matrix.set(m * n + i, i * n + t, cur);
            }
        }
    }

    let data = HopfData {
        order: 1,
        dim: dd,
        unit,
        counit,
        mult,
        comult,
        antipode,
        r_matrix,
        // Placeholder; the caller searches for the genuine ribbon element.
        ribbon: Matrix::zeros(dd, 1),
        modules: BTreeMap::new(),
    };
    (data, dd)
}

fn basis_col(d: usize, i: usize) -> Matrix {
    let mut m = Matrix::zeros(d, 1);
    m.set(i, 0, one());
    m
}

/// Product in D⊗D of two d²-columns, via a precomputed basis product table.
fn double_h2_mult(prod: &[Vec<Matrix>], d: usize, u: &Matrix, w: &Matrix) -> Matrix {
    let mut unnz = Vec::new();
    for r in 0..d * d {
        if !u.get(r, 0).is_zero() {
            unnz.push(r);
        }
    }
    let mut wnnz = Vec::new();
    for r in 0..d * d {
        if !w.get(r, 0).is_zero() {
            wnnz.push(r);
        }
    }
    let mut out = Matrix::zeros(d * d, 1);
    for &ui in &unnz {
        let (a, b) = (ui / d, ui % d);
        let cu = u.get(ui, 0);
        for &wi in &wnnz {
            let (c, e) = (wi / d, wi % d);
            let cw = w.get(wi, 0);
            let coeff = cu * cw;
            for q in 0..d {
                let vq = prod[a][c].get(q, 0);
                if vq.is_zero() {
                    continue;
                }
                for r in 0..d {
                    let vr = prod[b][e].get(r, 0);
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
    out
}

pub fn sweedler_data() -> HopfData {
    let core = sweedler_core();
    let n = core.dim;
    let (mut data, dd) = drinfeld_double(&core);

    // Left regular module.
    let mut regular = Vec::with_capacity(dd);
    for u in 0..dd {
        let mut l = Matrix::zeros(dd, dd);
        for j in 0..dd {
            let prod = data.mult.mul(&basis_col(dd, u).kron(&basis_col(dd, j)));
            for r in 0..dd {
                let v = prod.get(r, 0);
                if !v.is_zero() {
                    l.set(r, j, v.clone());
                }
            }
        }
        regular.push(l);
    }
    data.modules.insert(String::from("H"), regular);

    // Every ribbon element of a quasitriangular Hopf algebra has the form
    // u·ℓ with ℓ grouplike, and the grouplikes of this double are exactly
    // the Klein group {ε, β}×{1, g} (β(g) = −1, β(x) = 0). All four square
    // to the identity while u⁻¹S(u) = β⋈g ≠ 1, so the exhaustive search
    // below finds no strict ribbon element: the double of the Sweedler
    // algebra is quasitriangular and factorizable but NOT ribbon. We ship
    // the canonical balancing element v = u·(ε⋈g) instead — central, with
    // counit one and the genuine grouplike pivot ε⋈g — so that the axiom
    // checker exhibits exactly which ribbon axioms fail and nothing else.
    let mut pre = data.clone();
    pre.ribbon = pre.unit.clone();
    let hc = HopfCat::new(pre).expect("preliminary double is well-formed");
    let prod: Vec<Vec<Matrix>> = (0..dd)
        .map(|i| {
            (0..dd)
                .map(|j| hc.element_mult(&basis_col(dd, i), &basis_col(dd, j)))
                .collect()
        })
        .collect();

    let eps_coords: Vec<FieldElement> = (0..n).map(|m| core.counit.get(0, m).clone()).collect();
    let beta_coords: Vec<FieldElement> =
        vec![one(), m_one(), FieldElement::zero(), FieldElement::zero()];
    let one_h = Matrix::col_vec((0..n).map(|t| core.unit.get(t, 0).clone()).collect());
    let g_h = basis_col(n, 1);
    let mut candidates = Vec::new();
    for p in [&eps_coords, &beta_coords] {
        for h in [&one_h, &g_h] {
            candidates.push(Matrix::col_vec(p.clone()).kron(h));
        }
    }

    let (strict, balancing) = ribbon_search(&hc, &prod, &candidates);
    data.ribbon = strict
        .or(balancing)
        .expect("the double carries a central counit-one balancing element");
    // All structure constants are rational, but the coend pairing
    // normalization λ = √(1/ρ) needs i: the integral self-pairing of this
    // double is ρ = −1. Declare ℚ(ζ₄) as the ambient field.
    data.order = 4;
    data
}

/// Exhaustive ribbon-element search over v = u·ℓ for the supplied grouplike
/// candidates ℓ (every ribbon element is of this form). Returns the first
/// strict ribbon element together with the first central counit-one
/// "balancing" candidate, the honest fallback for quasitriangular algebras
/// that admit no ribbon element at all.
fn ribbon_search(
    hc: &HopfCat,
    prod: &[Vec<Matrix>],
    candidates: &[Matrix],
) -> (Option<Matrix>, Option<Matrix>) {
    let d = hc.data.dim;
    let u = &hc.drinfeld;
    let su = hc.element_antipode(u);
    let usu = hc.element_mult(u, &su);
    // Monodromy inverse via the closed form R⁻¹ = (S⊗id)R.
    let mut rinv = Matrix::zeros(d * d, 1);
    let mut r21inv = Matrix::zeros(d * d, 1);
    for i in 0..d {
        for j in 0..d {
            let r = hc.data.r_matrix.get(i, j);
            if r.is_zero() {
                continue;
            }
            for p in 0..d {
                let s = hc.data.antipode.get(p, i);
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
    let minv = double_h2_mult(prod, d, &rinv, &r21inv);

    let mut strict = None;
    let mut balancing = None;
    for ell in candidates {
        let v = hc.element_mult(u, ell);
        if hc.left_mult_matrix(&v) != hc.right_mult_matrix(&v) {
            continue;
        }
        if !hc.element_counit(&v).is_one() {
            continue;
        }
        if balancing.is_none() {
            balancing = Some(v.clone());
        }
        if hc.element_antipode(&v) != v {
            continue;
        }
        if hc.element_mult(&v, &v) != usu {
            continue;
        }
        if hc.element_comult(&v) != double_h2_mult(prod, d, &minv, &v.kron(&v)) {
            continue;
        }
        strict = Some(v);
        break;
    }
    (strict, balancing)
}

pub fn sweedler_double() -> Category {
    Category::Hopf(HopfCat::new(sweedler_data()).expect("sweedler double is well-formed"))
}

// ---------------------------------------------------------------------------
// Restricted quantum sl₂ at a primitive cube root of unity q = ζ₃:
// 27-dimensional, non-semisimple, quasitriangular, factorizable, and ribbon —
// a desk-sized Hopf algebra whose module category is modular without being
// semisimple. PBW basis E^aF^bK^c with K³ = 1, E³ = F³ = 0, KE = q²EK,
// KF = q⁻²FK, EF − FE = (K − K⁻¹)/(q − q⁻¹).
// ---------------------------------------------------------------------------

/// q^k for q = ζ₃, represented inside ℚ(ζ₁₂): the larger ambient field
/// contains √3, which the coend pairing normalization λ = √(1/ρ) needs
/// (the integral self-pairing of this algebra is ρ = 3).
fn qp(k: i64) -> FieldElement {
    FieldElement::zeta_pow(12, 4 * k)
}

/// Basis monomial E^a F^b K^c ↦ index 9a + 3b + c.
fn uq_idx(a: usize, b: usize, c: usize) -> usize {
    9 * a + 3 * b + c
}

fn acc(m: &mut Matrix, r: usize, c: usize, v: &FieldElement) {
    if v.is_zero() {
        return;
    }
    let cur = m.get(r, c) + v;
    m.set(r, c, cur);
}

/// Right-multiply a 27-vector by a generator in the PBW basis. The E case
/// uses F^bE = EF^b − [b]F^{b−1}(q^{−(b−1)}K − q^{b−1}K⁻¹)/(q − q⁻¹).
fn uq_rmul(v: &Matrix, generator: char) -> Matrix {
    let mut out = Matrix::zeros(27, 1);
    let qd_inv = (&qp(1) - &qp(-1)).inv();
    for a in 0..3usize {
        for b in 0..3usize {
            for c in 0..3usize {
                let coeff = v.get(uq_idx(a, b, c), 0);
                if coeff.is_zero() {
                    continue;
                }
                match generator {
                    'K' => acc(&mut out, uq_idx(a, b, (c + 1) % 3), 0, coeff),
                    'F' => {
                        if b + 1 < 3 {
                            let t = coeff * &qp(-2 * c as i64);
                            acc(&mut out, uq_idx(a, b + 1, c), 0, &t);
                        }
                    }
                    'E' => {
                        let front = coeff * &qp(2 * c as i64);
                        if a + 1 < 3 {
                            acc(&mut out, uq_idx(a + 1, b, c), 0, &front);
                        }
                        if b > 0 {
                            let bb = b as i64;
                            let qnum = &(&qp(bb) - &qp(-bb)) * &qd_inv;
                            let scale = &(&qnum * &qd_inv) * &front;
                            let up = -(&scale * &qp(-(bb - 1)));
                            acc(&mut out, uq_idx(a, b - 1, (c + 1) % 3), 0, &up);
                            let down = &scale * &qp(bb - 1);
                            acc(&mut out, uq_idx(a, b - 1, (c + 2) % 3), 0, &down);
                        }
                    }
                    _ => unreachable!("unknown generator"),
                }
            }
        }
    }
    out
}

/// Complete basis-product table e_i·e_j for the 27-dimensional algebra.
fn uq_prod_table() -> Vec<Vec<Matrix>> {
    let mut prod = Vec::with_capacity(27);
    for i in 0..27 {
        let mut row: Vec<Matrix> = (0..27).map(|_| Matrix::zeros(27, 1)).collect();
        let mut ve = basis_col(27, i);
        for a2 in 0..3usize {
            let mut vf = ve.clone();
            for b2 in 0..3usize {
                let mut vk = vf.clone();
                for c2 in 0..3usize {
                    row[uq_idx(a2, b2, c2)] = vk.clone();
                    if c2 + 1 < 3 {
                        vk = uq_rmul(&vk, 'K');
                    }
                }
                if b2 + 1 < 3 {
                    vf = uq_rmul(&vf, 'F');
                }
            }
            if a2 + 1 < 3 {
                ve = uq_rmul(&ve, 'E');
            }
        }
        prod.push(row);
    }
    prod
}

/// Candidate R-matrices. The Cartan kernel (1/3)Σ q^{ab} K^a⊗K^b acts on
/// weight vectors as q^{λμ/2} (since q^{ab} = q^{−2ab} and 2⁻¹ = 2 mod 3);
/// the nilpotent factor is Σ_n (q−q⁻¹)^n/[n]!·q^{t_n} E^n⊗F^n with exponent
/// twists t₁, t₂ and leg/order flips scanned by the convention-pinning test.
fn uq_r_candidate(
    prod: &[Vec<Matrix>],
    legs_flipped: bool,
    cartan_first: bool,
    t1: i64,
    t2: i64,
) -> Matrix {
    let third = FieldElement::from_int(3).inv();
    let mut cartan = Matrix::zeros(27 * 27, 1);
    for a in 0..3usize {
        for b in 0..3usize {
            let v = &third * &qp((a * b) as i64);
            acc(&mut cartan, uq_idx(0, 0, a) * 27 + uq_idx(0, 0, b), 0, &v);
        }
    }
    let qd = &qp(1) - &qp(-1);
    let mut nil = Matrix::zeros(27 * 27, 1);
    let e_leg = |n: usize| if legs_flipped { uq_idx(0, n, 0) } else { uq_idx(n, 0, 0) };
    let f_leg = |n: usize| if legs_flipped { uq_idx(n, 0, 0) } else { uq_idx(0, n, 0) };
    acc(&mut nil, 0, 0, &one());
    let c1 = &qd * &qp(t1);
    acc(&mut nil, e_leg(1) * 27 + f_leg(1), 0, &c1);
    // [2]! = q + q⁻¹ = −1 at a cube root of unity.
    let c2 = -(&(&qd * &qd) * &qp(t2));
    acc(&mut nil, e_leg(2) * 27 + f_leg(2), 0, &c2);
    let vec = if cartan_first {
        double_h2_mult(prod, 27, &cartan, &nil)
    } else {
        double_h2_mult(prod, 27, &nil, &cartan)
    };
    let mut r = Matrix::zeros(27, 27);
    for i in 0..27 {
        for j in 0..27 {
            let v = vec.get(i * 27 + j, 0);
            if !v.is_zero() {
                r.set(i, j, v.clone());
            }
        }
    }
    r
}

/// Structure tensors minus the R-matrix and ribbon element.
fn uq_bare_data(prod: &[Vec<Matrix>]) -> HopfData {
    let d = 27usize;
    let mut mult = Matrix::zeros(d, d * d);
    for i in 0..d {
        for j in 0..d {
            for r in 0..d {
                let v = prod[i][j].get(r, 0);
                if !v.is_zero() {
                    mult.set(r, i * d + j, v.clone());
                }
            }
        }
    }
    let unit = basis_col(d, uq_idx(0, 0, 0));
    let mut counit = Matrix::zeros(1, d);
    for c in 0..3 {
        counit.set(0, uq_idx(0, 0, c), one());
    }

    // Δ E = 1⊗E + E⊗K, ΔF = K⁻¹⊗F + F⊗1, ΔK = K⊗K.
    let mut delta_e = Matrix::zeros(d * d, 1);
    acc(&mut delta_e, uq_idx(0, 0, 0) * d + uq_idx(1, 0, 0), 0, &one());
    acc(&mut delta_e, uq_idx(1, 0, 0) * d + uq_idx(0, 0, 1), 0, &one());
    let mut delta_f = Matrix::zeros(d * d, 1);
    acc(&mut delta_f, uq_idx(0, 0, 2) * d + uq_idx(0, 1, 0), 0, &one());
    acc(&mut delta_f, uq_idx(0, 1, 0) * d + uq_idx(0, 0, 0), 0, &one());
    let mut delta_k = Matrix::zeros(d * d, 1);
    acc(&mut delta_k, uq_idx(0, 0, 1) * d + uq_idx(0, 0, 1), 0, &one());

    let mut comult = Matrix::zeros(d * d, d);
    let mut de_pow = basis_col(d * d, 0);
    for a in 0..3usize {
        let mut df_pow = de_pow.clone();
        for b in 0..3usize {
            let mut dk_pow = df_pow.clone();
            for c in 0..3usize {
                for r in 0..d * d {
                    let v = dk_pow.get(r, 0);
                    if !v.is_zero() {
                        comult.set(r, uq_idx(a, b, c), v.clone());
                    }
                }
                if c + 1 < 3 {
                    dk_pow = double_h2_mult(prod, d, &dk_pow, &delta_k);
                }
            }
            if b + 1 < 3 {
                df_pow = double_h2_mult(prod, d, &df_pow, &delta_f);
            }
        }
        if a + 1 < 3 {
            de_pow = double_h2_mult(prod, d, &de_pow, &delta_e);
        }
    }

    // S(K) = K⁻¹, S(E) = −EK⁻¹, S(F) = −KF = −q⁻²FK, applied in reverse
    // order to a monomial: S(E^aF^bK^c) = K^{−c}·S(F)^b·S(E)^a.
    let emul = |x: &Matrix, y: &Matrix| -> Matrix {
        let mut out = Matrix::zeros(d, 1);
        for i in 0..d {
            let xi = x.get(i, 0);
            if xi.is_zero() {
                continue;
            }
            for j in 0..d {
                let yj = y.get(j, 0);
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for r in 0..d {
                    let v = prod[i][j].get(r, 0);
                    if !v.is_zero() {
                        let add = &c * v;
                        acc(&mut out, r, 0, &add);
                    }
                }
            }
        }
        out
    };
    let mut s_e = Matrix::zeros(d, 1);
    s_e.set(uq_idx(1, 0, 2), 0, m_one());
    let mut s_f = Matrix::zeros(d, 1);
    s_f.set(uq_idx(0, 1, 1), 0, -qp(-2));
    let mut antipode = Matrix::zeros(d, d);
    for a in 0..3usize {
        for b in 0..3usize {
            for c in 0..3usize {
                let mut v = basis_col(d, uq_idx(0, 0, (3 - c) % 3));
                for _ in 0..b {
                    v = emul(&v, &s_f);
                }
                for _ in 0..a {
                    v = emul(&v, &s_e);
                }
                for r in 0..d {
                    let w = v.get(r, 0);
                    if !w.is_zero() {
                        antipode.set(r, uq_idx(a, b, c), w.clone());
                    }
                }
            }
        }
    }

    // Modules: the three small simples and the left regular module.
    let module_from_generators = |me: Matrix, mf: Matrix, mk: Matrix| -> Vec<Matrix> {
        let mut mats = Vec::with_capacity(d);
        for a in 0..3usize {
            for b in 0..3usize {
                for c in 0..3usize {
                    let mut m = Matrix::identity(me.rows());
                    for _ in 0..a {
                        m = m.mul(&me);
                    }
                    for _ in 0..b {
                        m = m.mul(&mf);
                    }
                    for _ in 0..c {
                        m = m.mul(&mk);
                    }
                    mats.push(m);
                }
            }
        }
        mats
    };
    let mut modules = BTreeMap::new();
    modules.insert(
        String::from("V1"),
        module_from_generators(
            Matrix::zeros(1, 1),
            Matrix::zeros(1, 1),
            Matrix::identity(1),
        ),
    );
    let mut me2 = Matrix::zeros(2, 2);
    me2.set(0, 1, one());
    let mut mf2 = Matrix::zeros(2, 2);
    mf2.set(1, 0, one());
    let mut mk2 = Matrix::zeros(2, 2);
    mk2.set(0, 0, qp(1));
    mk2.set(1, 1, qp(-1));
    modules.insert(String::from("V2"), module_from_generators(me2, mf2, mk2));
    let mut me3 = Matrix::zeros(3, 3);
    me3.set(0, 1, m_one());
    me3.set(1, 2, m_one());
    let mut mf3 = Matrix::zeros(3, 3);
    mf3.set(1, 0, one());
    mf3.set(2, 1, one());
    let mut mk3 = Matrix::zeros(3, 3);
    mk3.set(0, 0, qp(2));
    mk3.set(1, 1, one());
    mk3.set(2, 2, qp(-2));
    modules.insert(String::from("V3"), module_from_generators(me3, mf3, mk3));
    let mut regular = Vec::with_capacity(d);
    for i in 0..d {
        let mut l = Matrix::zeros(d, d);
        for j in 0..d {
            for r in 0..d {
                let v = prod[i][j].get(r, 0);
                if !v.is_zero() {
                    l.set(r, j, v.clone());
                }
            }
        }
        regular.push(l);
    }
    modules.insert(String::from("H"), regular);

    HopfData {
        order: 12,
        dim: d,
        unit,
        counit,
        mult,
        comult,
        antipode,
        r_matrix: Matrix::zeros(d, d),
        ribbon: Matrix::zeros(d, 1),
        modules,
    }
}

pub fn uqsl2_data() -> HopfData {
    let prod = uq_prod_table();
    let mut data = uq_bare_data(&prod);
    // Convention pinned by the exact quasitriangularity scan (the ignored
    // uq_r_convention_scan test, which reports this as the unique solution):
    // Cartan factor first, legs Eⁿ⊗Fⁿ, exponent twists t₁ = 0, t₂ = 1 —
    // i.e. the q^{n(n−1)/2} normalization. The ribbon element is u·K⁻¹.
    data.r_matrix = uq_r_candidate(&prod, false, true, 0, 1);
    let mut pre = data.clone();
    pre.ribbon = pre.unit.clone();
    let hc = HopfCat::new(pre).expect("preliminary quantum sl2 is well-formed");
    let candidates: Vec<Matrix> = (0..3).map(|c| basis_col(27, uq_idx(0, 0, c))).collect();
    let (strict, _) = ribbon_search(&hc, &prod, &candidates);
    data.ribbon = strict.expect("restricted quantum sl2 has a ribbon element");
    data
}

pub fn uqsl2() -> Category {
    Category::Hopf(HopfCat::new(uqsl2_data()).expect("quantum sl2 data is well-formed"))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::ObjectExpr;

    #[test]
    fn toric_axioms_hold() {
        let cat = toric();
        let report = cat.check_axioms();
        assert!(report.ok(), "failures: {:?}", report.failures());
    }

    #[test]
    fn vect_axioms_hold() {
        let report = vect().check_axioms();
        assert!(report.ok(), "failures: {:?}", report.failures());
    }

    #[test]
    fn repz2_axioms_hold() {
        let report = repz2().check_axioms();
        assert!(report.ok(), "failures: {:?}", report.failures());
    }

    #[test]
    fn fib2_axioms_hold() {
        let report = fib2().check_axioms();
        assert!(report.ok(), "failures: {:?}", report.failures());
    }

    #[test]
    fn dz2_axioms_hold() {
        let report = dz2_hopf().check_axioms();
        assert!(report.ok(), "failures: {:?}", report.failures());
    }

    /// The double of the Sweedler algebra is quasitriangular and
    /// factorizable but provably NOT ribbon (u⁻¹S(u) = β⋈g is a nontrivial
    /// grouplike, and every grouplike of the double squares to 1). The
    /// bundled balancing element must make the axiom checker fail exactly
    /// the ribbon/twist family and nothing else.
    #[test]
    fn sweedler_double_fails_exactly_the_ribbon_axioms() {
        let report = sweedler_double().check_axioms();
        assert!(!report.ok(), "a non-ribbon double must not pass");
        let failures = report.failures();
        let names: Vec<&str> = failures.iter().map(|f| f.name.as_str()).collect();
        assert!(names.contains(&"ribbon-antipode-fixed"), "missing: {names:?}");
        assert!(names.contains(&"ribbon-square"), "missing: {names:?}");
        for f in &failures {
            assert!(
                f.name.starts_with("ribbon-") || f.name.starts_with("twist-"),
                "unexpected non-ribbon failure {}: {}",
                f.name,
                f.detail
            );
        }
        // The balancing element is still central with counit one, the
        // pivot is genuinely grouplike, and Δ(v) = (R₂₁R)⁻¹(v⊗v) holds.
        for must_pass in [
            "ribbon-central",
            "ribbon-counit-one",
            "ribbon-comultiplication",
            "grouplike-comultiplicative",
            "grouplike-antipode-inverse",
        ] {
            assert!(
                !names.contains(&must_pass),
                "{must_pass} should hold for the balancing element"
            );
        }
    }

    #[test]
    fn uqsl2_axioms_hold() {
        let report = uqsl2().check_axioms();
        assert!(report.ok(), "failures: {:?}", report.failures());
    }

    #[test]
    fn uqsl2_quantum_dimensions_detect_non_semisimplicity() {
        let cat = uqsl2();
        assert_eq!(cat.qdim(&ObjectExpr::atom("V1")), FieldElement::one());
        // [2]_q = q + q⁻¹ = −1 and [3]_q = q² + 1 + q⁻² = 0: the Steinberg
        // module has vanishing quantum dimension.
        assert_eq!(cat.qdim(&ObjectExpr::atom("V2")), -FieldElement::one());
        assert!(cat.qdim(&ObjectExpr::atom("V3")).is_zero());
    }

    /// Convention-pinning scan for the quantum sl₂ R-matrix: prints every
    /// (legs, order, t₁, t₂) combination that satisfies the exact
    /// quasitriangularity equations, plus the grouplike completing it to a
    /// ribbon structure. Run with --ignored --nocapture.
    #[test]
    #[ignore]
    fn uq_r_convention_scan() {
        extern crate std;
        use std::println;
        let prod = uq_prod_table();
        let bare = uq_bare_data(&prod);
        let d = 27usize;
        for legs in [false, true] {
            for cfirst in [false, true] {
                for t1 in 0..3i64 {
                    for t2 in 0..3i64 {
                        let mut data = bare.clone();
                        data.r_matrix = uq_r_candidate(&prod, legs, cfirst, t1, t2);
                        data.ribbon = data.unit.clone();
                        let hc = match HopfCat::new(data) {
                            Ok(h) => h,
                            Err(_) => continue,
                        };
                        let mut rvec = Matrix::zeros(d * d, 1);
                        for i in 0..d {
                            for j in 0..d {
                                let v = hc.data.r_matrix.get(i, j);
                                if !v.is_zero() {
                                    rvec.set(i * d + j, 0, v.clone());
                                }
                            }
                        }
                        // R Δ(h) = Δ^op(h) R on the generators.
                        let gens = [uq_idx(1, 0, 0), uq_idx(0, 1, 0), uq_idx(0, 0, 1)];
                        let mut ok = true;
                        for &g in &gens {
                            let dg = hc.element_comult(&basis_col(d, g));
                            let mut dg_op = Matrix::zeros(d * d, 1);
                            for p in 0..d {
                                for q in 0..d {
                                    let v = dg.get(p * d + q, 0);
                                    if !v.is_zero() {
                                        dg_op.set(q * d + p, 0, v.clone());
                                    }
                                }
                            }
                            let lhs = double_h2_mult(&prod, d, &rvec, &dg);
                            let rhs = double_h2_mult(&prod, d, &dg_op, &rvec);
                            if lhs != rhs {
                                ok = false;
                                break;
                            }
                        }
                        if !ok {
                            continue;
                        }
                        // (Δ⊗id)R = R₁₃R₂₃ and (id⊗Δ)R = R₁₃R₁₂.
                        let mut lhs1 = Matrix::zeros(d * d * d, 1);
                        let mut lhs2 = Matrix::zeros(d * d * d, 1);
                        let mut rhs1 = Matrix::zeros(d * d * d, 1);
                        let mut rhs2 = Matrix::zeros(d * d * d, 1);
                        for i in 0..d {
                            for j in 0..d {
                                let r = hc.data.r_matrix.get(i, j);
                                if r.is_zero() {
                                    continue;
                                }
                                let di = hc.element_comult(&basis_col(d, i));
                                for p in 0..d {
                                    for q in 0..d {
                                        let c = di.get(p * d + q, 0);
                                        if !c.is_zero() {
                                            let v = r * c;
                                            acc(&mut lhs1, (p * d + q) * d + j, 0, &v);
                                        }
                                    }
                                }
                                let dj = hc.element_comult(&basis_col(d, j));
                                for p in 0..d {
                                    for q in 0..d {
                                        let c = dj.get(p * d + q, 0);
                                        if !c.is_zero() {
                                            let v = r * c;
                                            acc(&mut lhs2, (i * d + p) * d + q, 0, &v);
                                        }
                                    }
                                }
                                for a in 0..d {
                                    for b in 0..d {
                                        let r2 = hc.data.r_matrix.get(a, b);
                                        if r2.is_zero() {
                                            continue;
                                        }
                                        let co = r2 * r;
                                        // R₁₃R₂₃: (a⊗_⊗b)(­_⊗i⊗j) with
                                        // third legs multiplied.
                                        for s in 0..d {
                                            let v = prod[b][j].get(s, 0);
                                            if !v.is_zero() {
                                                let t = &co * v;
                                                acc(&mut rhs1, (a * d + i) * d + s, 0, &t);
                                            }
                                        }
                                        // R₁₃R₁₂: first legs multiplied.
                                        for s in 0..d {
                                            let v = prod[a][i].get(s, 0);
                                            if !v.is_zero() {
                                                let t = &co * v;
                                                acc(&mut rhs2, (s * d + j) * d + b, 0, &t);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                        if lhs1 != rhs1 || lhs2 != rhs2 {
                            continue;
                        }
                        let candidates: Vec<Matrix> =
                            (0..3).map(|c| basis_col(27, uq_idx(0, 0, c))).collect();
                        let (strict, _) = ribbon_search(&hc, &prod, &candidates);
                        println!(
                            "QT PASS legs={legs} cartan_first={cfirst} t1={t1} t2={t2} ribbon_grouplike={:?}",
                            strict.map(|v| {
                                // Report which K-power completes it.
                                let uinv = &hc.drinfeld_inv;
                                let ell = hc.element_mult(uinv, &v);
                                (0..27).filter(|&i| !ell.get(i, 0).is_zero()).collect::<Vec<_>>()
                            })
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn toric_quantum_dimensions_are_one() {
        let cat = toric();
        for l in ["1", "e", "m", "f"] {
            assert!(cat.qdim(&ObjectExpr::atom(l)).is_one(), "qdim({l}) ≠ 1");
        }
    }

    #[test]
    fn fib2_quantum_dimension_is_golden() {
        let cat = fib2();
        // d(tp) = φ = −ζ² − ζ³.
        let phi = -(&FieldElement::zeta_pow(5, 2) + &FieldElement::zeta_pow(5, 3));
        assert_eq!(cat.qdim(&ObjectExpr::atom("tp")), phi);
        assert_eq!(cat.qdim(&ObjectExpr::atom("tm")), phi);
        assert_eq!(cat.qdim(&ObjectExpr::atom("tt")), &phi * &phi);
    }

    #[test]
    fn mutated_toric_braiding_fails_axioms() {
        let mut data = toric_data();
        // Flip one half-braiding sign: breaks the hexagon/naturality web.
        data.r_symbols.insert(
            (String::from("e"), String::from("m"), String::from("f")),
            -FieldElement::one(),
        );
        let cat = Category::Skeletal(SkeletalCat::new(data).expect("shape still valid"));
        assert!(!cat.check_axioms().ok(), "mutated braiding must fail");
    }

    #[test]
    fn mutated_toric_twist_fails_axioms() {
        let mut data = toric_data();
        data.twist.insert(String::from("f"), FieldElement::one());
        let cat = Category::Skeletal(SkeletalCat::new(data).expect("shape still valid"));
        assert!(!cat.check_axioms().ok(), "mutated twist must fail");
    }

    #[test]
    fn mutated_fib2_associator_fails_axioms() {
        let mut data = fib2_data();
        let key = (
            String::from("tp"),
            String::from("tp"),
            String::from("tp"),
            String::from("tp"),
            String::from("1"),
            String::from("1"),
        );
        data.f_symbols.insert(key, FieldElement::from_int(2));
        match SkeletalCat::new(data) {
            Ok(cat) => {
                let report = Category::Skeletal(cat).check_axioms();
                assert!(!report.ok(), "mutated associator must fail");
            }
            Err(_) => {
                // Rejected at validation: also acceptable.
            }
        }
    }

    #[test]
    fn mutated_dz2_r_matrix_fails_axioms() {
        let mut data = dz2_data();
        let v = data.r_matrix.get(0, 0).clone();
        data.r_matrix.set(0, 2, &v + &FieldElement::one());
        match HopfCat::new(data) {
            Ok(cat) => {
                let report = Category::Hopf(cat).check_axioms();
                assert!(!report.ok(), "mutated R-matrix must fail");
            }
            Err(_) => {}
        }
    }
}
