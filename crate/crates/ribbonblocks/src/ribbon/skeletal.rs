//! Skeletal backend: a multiplicity-free fusion category presented by
//! labels, fusion rules, F/R symbols, twists and pivot coefficients.
//!
//! The presentation space of an object X is P(X) = ⊕_c Hom(c, X) over simple
//! c, with basis the *left-nested* fusion trees of each pure tensor word in
//! the expansion of X. Left-nesting is the canonical bracket
//! (((x₁x₂)x₃)…)x_n; a tree is recorded as its sequence of intermediate
//! charges. Left-nested trees are closed under substitution of a tree for
//! the first leaf, which is what makes the recursive unbracketing engine
//! below terminate without ever re-associating an already-canonical prefix.
//!
//! Non-simple named objects (the bulk object F = ⊕ᵢ xᵢ, the coend
//! K = ⊕_a a⊗a^∨) are declared as formal sums of pure words and expanded by
//! distributivity; a presentation basis vector therefore carries a summand
//! word index and a tree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::linalg::Matrix;
use crate::scalar::FieldElement;

use super::{Atom, Morphism, ObjectExpr, COEND_NAME};

pub type Label = String;
/// A pure tensor word of (simple label, dual power) letters.
pub type PureWord = Vec<(Label, i32)>;

/// F-symbol key (a,b,c; d; e,f): coefficient of the right tree through f in
/// the associator image of the left tree through e, for the fusion
/// (a⊗b)⊗c → d.
pub type FKey = (Label, Label, Label, Label, Label, Label);

#[derive(Clone)]
pub struct SkeletalData {
    /// Cyclotomic order of the ground field traits; every scalar is order 1
    /// or this order.
    pub order: u32,
    pub unit: Label,
    pub simples: Vec<Label>,
    pub dual: BTreeMap<Label, Label>,
    /// Multiplicity-free fusion: c appears in fusion[(a,b)] iff N_{ab}^c = 1.
    pub fusion: BTreeMap<(Label, Label), Vec<Label>>,
    /// Missing admissible keys default to 1 (trivial associator component).
    pub f_symbols: BTreeMap<FKey, FieldElement>,
    /// R[a,b;c]: braiding scalar on the fusion channel c; missing admissible
    /// keys default to 1.
    pub r_symbols: BTreeMap<(Label, Label, Label), FieldElement>,
    pub twist: BTreeMap<Label, FieldElement>,
    pub pivot: BTreeMap<Label, FieldElement>,
    /// Named direct sums of pure words (e.g. a bulk algebra object).
    pub sums: BTreeMap<Label, Vec<PureWord>>,
}

/// A left-nested fusion tree on a pure word: mids[i] is the charge after
/// fusing leaves 0..=i, so mids.last() is the root (total charge). The empty
/// word has the empty tree with root = unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Tree {
    pub mids: Vec<Label>,
}

/// Presentation basis of an object: entry k is (word index, tree index,
/// root label); offsets[w] is the first entry of word w.
pub struct PBasis {
    pub words: Rc<Vec<PureWord>>,
    pub entries: Vec<(usize, usize, Label)>,
    pub offsets: Vec<usize>,
}

impl PBasis {
    pub fn index_of(&self, word: usize, tree: usize) -> usize {
        self.offsets[word] + tree
    }
}

/// Glue data for a pair (X, Y): the isomorphism between
/// ⊕_{a,b,c} Hom(a,X)⊗Hom(b,Y)⊗Hom(c,a⊗b) (columns) and P(X⊗Y).
pub struct Glue {
    pub cols: Vec<(usize, usize, usize, usize, Label)>,
    pub col_of: BTreeMap<(usize, usize, usize, usize, Label), usize>,
    pub to_left: Matrix,
    pub from_left: Matrix,
}

#[derive(Default)]
struct SkCaches {
    trees: BTreeMap<PureWord, Rc<Vec<Tree>>>,
    expand: BTreeMap<ObjectExpr, Rc<Vec<PureWord>>>,
    pbasis: BTreeMap<ObjectExpr, Rc<PBasis>>,
    glue: BTreeMap<(ObjectExpr, ObjectExpr), Rc<Glue>>,
    /// (a, word, tree mids, top charge) → expansion into left-nested trees
    /// on a·word, as (mids, coefficient) pairs.
    unbr: BTreeMap<(Label, PureWord, Vec<Label>, Label), Rc<Vec<(Vec<Label>, FieldElement)>>>,
    /// Inverse associator blocks per (a, b, y, d).
    finv: BTreeMap<(Label, Label, Label, Label), Rc<(Vec<Label>, Vec<Label>, Matrix)>>,
    ev_coeff: BTreeMap<(Label, i32), FieldElement>,
    pivot_coeff: BTreeMap<(Label, i32), FieldElement>,
}

pub struct SkeletalCat {
    pub data: SkeletalData,
    caches: RefCell<SkCaches>,
}

impl Clone for SkeletalCat {
    fn clone(&self) -> Self {
        // Caches are recomputable; cloning resets them (used to hand a
        // category to another worker thread).
        SkeletalCat { data: self.data.clone(), caches: RefCell::new(SkCaches::default()) }
    }
}

pub(crate) fn word_expr(w: &PureWord) -> ObjectExpr {
    ObjectExpr::from_atoms(
        w.iter().map(|(l, k)| Atom { name: l.clone(), dual: *k }).collect(),
    )
}

/// Dualize a pure word `k` more times (reverse and shift powers).
fn word_dual_pow(w: &PureWord, k: i32) -> PureWord {
    let mut out = w.clone();
    let steps = k.abs();
    let delta = if k >= 0 { 1 } else { -1 };
    for _ in 0..steps {
        out.reverse();
        for e in out.iter_mut() {
            e.1 += delta;
        }
    }
    out
}

impl SkeletalCat {
    pub fn new(data: SkeletalData) -> Result<Self, String> {
        let mut data = data;
        validate_shape(&mut data)?;
        Ok(SkeletalCat { data, caches: RefCell::new(SkCaches::default()) })
    }

    // -- label-level helpers ------------------------------------------------

    pub fn unit(&self) -> &Label {
        &self.data.unit
    }

    pub fn dual_label(&self, a: &Label) -> Label {
        self.data.dual[a].clone()
    }

    /// The simple label presented by (label, dual power).
    pub fn eff(&self, l: &Label, k: i32) -> Label {
        if k.rem_euclid(2) == 0 {
            l.clone()
        } else {
            self.dual_label(l)
        }
    }

    pub fn fuse(&self, a: &Label, b: &Label) -> Vec<Label> {
        self.data.fusion[&(a.clone(), b.clone())].clone()
    }

    pub fn n_abc(&self, a: &Label, b: &Label, c: &Label) -> bool {
        self.data.fusion[&(a.clone(), b.clone())].contains(c)
    }

    pub fn f_symbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FieldElement {
        let adm = self.n_abc(a, b, e)
            && self.n_abc(e, c, d)
            && self.n_abc(b, c, f)
            && self.n_abc(a, f, d);
        if !adm {
            return FieldElement::zero();
        }
        let key = (a.clone(), b.clone(), c.clone(), d.clone(), e.clone(), f.clone());
        self.data.f_symbols.get(&key).cloned().unwrap_or_else(FieldElement::one)
    }

    pub fn r_symbol(&self, a: &Label, b: &Label, c: &Label) -> FieldElement {
        if !self.n_abc(a, b, c) {
            return FieldElement::zero();
        }
        let key = (a.clone(), b.clone(), c.clone());
        self.data.r_symbols.get(&key).cloned().unwrap_or_else(FieldElement::one)
    }

    pub fn twist_scalar(&self, a: &Label) -> FieldElement {
        self.data.twist[a].clone()
    }

    // -- words, trees, presentations -----------------------------------------

    fn atom_words(&self, atom: &Atom) -> Vec<PureWord> {
        if let Some(words) = self.data.sums.get(&atom.name) {
            words.iter().map(|w| word_dual_pow(w, atom.dual)).collect()
        } else {
            vec![vec![(atom.name.clone(), atom.dual)]]
        }
    }

    pub fn expand(&self, x: &ObjectExpr) -> Rc<Vec<PureWord>> {
        if let Some(hit) = self.caches.borrow().expand.get(x) {
            return hit.clone();
        }
        let mut acc: Vec<PureWord> = vec![Vec::new()];
        for atom in &x.atoms {
            let parts = self.atom_words(atom);
            let mut next = Vec::with_capacity(acc.len() * parts.len());
            for w in &acc {
                for p in &parts {
                    let mut nw = w.clone();
                    nw.extend(p.iter().cloned());
                    next.push(nw);
                }
            }
            acc = next;
        }
        let rc = Rc::new(acc);
        self.caches.borrow_mut().expand.insert(x.clone(), rc.clone());
        rc
    }

    pub fn trees(&self, w: &PureWord) -> Rc<Vec<Tree>> {
        if let Some(hit) = self.caches.borrow().trees.get(w) {
            return hit.clone();
        }
        let mut states: Vec<Vec<Label>> = if w.is_empty() {
            vec![Vec::new()]
        } else {
            vec![vec![self.eff(&w[0].0, w[0].1)]]
        };
        for letter in w.iter().skip(1) {
            let y = self.eff(&letter.0, letter.1);
            let mut next = Vec::new();
            for mids in &states {
                let last = mids.last().unwrap();
                for c in self.fuse(last, &y) {
                    let mut ext = mids.clone();
                    ext.push(c);
                    next.push(ext);
                }
            }
            states = next;
        }
        let rc = Rc::new(states.into_iter().map(|mids| Tree { mids }).collect::<Vec<_>>());
        self.caches.borrow_mut().trees.insert(w.clone(), rc.clone());
        rc
    }

    fn tree_root(&self, t: &Tree) -> Label {
        t.mids.last().cloned().unwrap_or_else(|| self.data.unit.clone())
    }

    pub fn pbasis(&self, x: &ObjectExpr) -> Rc<PBasis> {
        if let Some(hit) = self.caches.borrow().pbasis.get(x) {
            return hit.clone();
        }
        let words = self.expand(x);
        let mut entries = Vec::new();
        let mut offsets = Vec::with_capacity(words.len());
        for (wi, w) in words.iter().enumerate() {
            offsets.push(entries.len());
            for (ti, t) in self.trees(w).iter().enumerate() {
                entries.push((wi, ti, self.tree_root(t)));
            }
        }
        let rc = Rc::new(PBasis { words: words.clone(), entries, offsets });
        self.caches.borrow_mut().pbasis.insert(x.clone(), rc.clone());
        rc
    }

    pub fn presentation_dim(&self, x: &ObjectExpr) -> usize {
        self.pbasis(x).entries.len()
    }

    // -- the unbracketing engine ---------------------------------------------

    /// Inverse associator block for (a, b, y; d): returns (E, F, C) where E
    /// and F list the admissible left/right mid charges and C[f][e] is the
    /// coefficient of the left tree through e in the expansion of the right
    /// tree through f.
    fn f_inverse(&self, a: &Label, b: &Label, y: &Label, d: &Label) -> Rc<(Vec<Label>, Vec<Label>, Matrix)> {
        let key = (a.clone(), b.clone(), y.clone(), d.clone());
        if let Some(hit) = self.caches.borrow().finv.get(&key) {
            return hit.clone();
        }
        let es: Vec<Label> = self
            .fuse(a, b)
            .into_iter()
            .filter(|e| self.n_abc(e, y, d))
            .collect();
        let fs: Vec<Label> = self
            .fuse(b, y)
            .into_iter()
            .filter(|f| self.n_abc(a, f, d))
            .collect();
        assert_eq!(
            es.len(),
            fs.len(),
            "fusion multiplicities disagree for ({a},{b},{y};{d})"
        );
        let m = Matrix::from_fn(es.len(), fs.len(), |ei, fi| {
            self.f_symbol(a, b, y, d, &es[ei], &fs[fi])
        });
        let inv = m
            .inverse()
            .unwrap_or_else(|| panic!("associator block not invertible at ({a},{b},{y};{d})"));
        let rc = Rc::new((es, fs, inv));
        self.caches.borrow_mut().finv.insert(key, rc.clone());
        rc
    }

    /// Expand κ^{a,b}_d ∘ (id_a ⊗ t) into left-nested trees on the word
    /// a·u, where t is a left-nested tree on u with root b. Returns (mids,
    /// coefficient) pairs; mids[0] = a always.
    fn unbr(&self, a: &Label, u: &PureWord, t: &Tree, d: &Label) -> Rc<Vec<(Vec<Label>, FieldElement)>> {
        let key = (a.clone(), u.clone(), t.mids.clone(), d.clone());
        if let Some(hit) = self.caches.borrow().unbr.get(&key) {
            return hit.clone();
        }
        let result: Vec<(Vec<Label>, FieldElement)> = if u.is_empty() {
            if a == d {
                vec![(vec![a.clone()], FieldElement::one())]
            } else {
                Vec::new()
            }
        } else if u.len() == 1 {
            let y = self.eff(&u[0].0, u[0].1);
            if self.n_abc(a, &y, d) {
                vec![(vec![a.clone(), d.clone()], FieldElement::one())]
            } else {
                Vec::new()
            }
        } else {
            let (upre, ulast) = (u[..u.len() - 1].to_vec(), &u[u.len() - 1]);
            let y = self.eff(&ulast.0, ulast.1);
            let b = self.tree_root(t);
            let tpre = Tree { mids: t.mids[..t.mids.len() - 1].to_vec() };
            let bpre = self.tree_root(&tpre);
            let (es, fs, c) = &*self.f_inverse(a, &bpre, &y, d);
            let Some(fi) = fs.iter().position(|f| f == &b) else {
                let rc = Rc::new(Vec::new());
                self.caches.borrow_mut().unbr.insert(key, rc.clone());
                return rc;
            };
            let mut out = Vec::new();
            for (ei, e) in es.iter().enumerate() {
                let coeff = c.get(fi, ei).clone();
                if coeff.is_zero() {
                    continue;
                }
                for (mids, gamma) in self.unbr(a, &upre, &tpre, e).iter() {
                    let mut full = mids.clone();
                    full.push(d.clone());
                    out.push((full, &coeff * &gamma.clone()));
                }
            }
            out
        };
        let rc = Rc::new(result);
        self.caches.borrow_mut().unbr.insert(key, rc.clone());
        rc
    }

    // -- glue ----------------------------------------------------------------

    pub fn glue(&self, x: &ObjectExpr, y: &ObjectExpr) -> Rc<Glue> {
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.caches.borrow().glue.get(&key) {
            return hit.clone();
        }
        let px = self.pbasis(x);
        let py = self.pbasis(y);
        let xy = x.tensor(y);
        let pxy = self.pbasis(&xy);
        let ny = py.words.len();

        let mut cols = Vec::new();
        let mut col_of = BTreeMap::new();
        for &(xw, xt, ref a) in px.entries.iter() {
            for &(yw, yt, ref b) in py.entries.iter() {
                for c in self.fuse(a, b) {
                    col_of.insert((xw, xt, yw, yt, c.clone()), cols.len());
                    cols.push((xw, xt, yw, yt, c));
                }
            }
        }

        let mut to_left = Matrix::zeros(pxy.entries.len(), cols.len());
        for (ci, (xw, xt, yw, yt, c)) in cols.iter().enumerate() {
            let xword = &px.words[*xw];
            let yword = &py.words[*yw];
            let cat_word_idx = xw * ny + yw;
            let xtree = &self.trees(xword)[*xt];
            let ytree = &self.trees(yword)[*yt];
            if xword.is_empty() {
                // a = unit: the glued vector is the y-tree itself.
                let target = self
                    .trees(yword)
                    .iter()
                    .position(|t| t.mids == ytree.mids)
                    .unwrap();
                to_left.set(pxy.index_of(cat_word_idx, target), ci, FieldElement::one());
                continue;
            }
            if yword.is_empty() {
                let target = self
                    .trees(xword)
                    .iter()
                    .position(|t| t.mids == xtree.mids)
                    .unwrap();
                to_left.set(pxy.index_of(cat_word_idx, target), ci, FieldElement::one());
                continue;
            }
            let a = self.tree_root(xtree);
            let cat_word: PureWord = {
                let mut w = xword.clone();
                w.extend(yword.iter().cloned());
                w
            };
            let cat_trees = self.trees(&cat_word);
            for (mids_ayw, coeff) in self.unbr(&a, yword, ytree, c).iter() {
                // Substitute the x-tree for the first leaf "a".
                let mut full = xtree.mids.clone();
                full.extend(mids_ayw[1..].iter().cloned());
                let ti = cat_trees
                    .iter()
                    .position(|t| t.mids == full)
                    .unwrap_or_else(|| panic!("missing tree {full:?} on {cat_word:?}"));
                let row = pxy.index_of(cat_word_idx, ti);
                let cur = to_left.get(row, ci) + coeff;
                to_left.set(row, ci, cur);
            }
        }
        assert_eq!(
            to_left.rows(),
            to_left.cols(),
            "glued presentation dimension mismatch for {x:?} ⊗ {y:?}"
        );
        let from_left = to_left
            .inverse()
            .unwrap_or_else(|| panic!("glue map not invertible for {x:?} ⊗ {y:?}"));
        let rc = Rc::new(Glue { cols, col_of, to_left, from_left });
        self.caches.borrow_mut().glue.insert(key, rc.clone());
        rc
    }

    // -- structural morphisms --------------------------------------------------

    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let gl_dom = self.glue(&f.dom, &g.dom);
        let gl_cod = self.glue(&f.cod, &g.cod);
        let pfd = self.pbasis(&f.dom);
        let pfc = self.pbasis(&f.cod);
        let pgd = self.pbasis(&g.dom);
        let pgc = self.pbasis(&g.cod);

        let mut gm = Matrix::zeros(gl_cod.cols.len(), gl_dom.cols.len());
        for (ci, (xw, xt, yw, yt, c)) in gl_dom.cols.iter().enumerate() {
            let fcol = pfd.index_of(*xw, *xt);
            let gcol = pgd.index_of(*yw, *yt);
            for (fr, &(fxw, fxt, ref fa)) in pfc.entries.iter().enumerate() {
                let fv = f.mat.get(fr, fcol);
                if fv.is_zero() {
                    continue;
                }
                debug_assert_eq!(fa, &pfd.entries[fcol].2, "tensor factor not grade-preserving");
                for (gr, &(gyw, gyt, ref gb)) in pgc.entries.iter().enumerate() {
                    let gv = g.mat.get(gr, gcol);
                    if gv.is_zero() {
                        continue;
                    }
                    debug_assert_eq!(gb, &pgd.entries[gcol].2);
                    let target = gl_cod.col_of[&(fxw, fxt, gyw, gyt, c.clone())];
                    let cur = gm.get(target, ci) + &(fv * gv);
                    gm.set(target, ci, cur);
                }
            }
        }
        let mat = gl_cod.to_left.mul(&gm).mul(&gl_dom.from_left);
        Morphism::new(f.dom.tensor(&g.dom), f.cod.tensor(&g.cod), mat)
    }

    pub fn braiding(&self, x: &ObjectExpr, y: &ObjectExpr) -> Morphism {
        let gl_xy = self.glue(x, y);
        let gl_yx = self.glue(y, x);
        let px = self.pbasis(x);
        let py = self.pbasis(y);
        let mut bm = Matrix::zeros(gl_yx.cols.len(), gl_xy.cols.len());
        for (ci, (xw, xt, yw, yt, c)) in gl_xy.cols.iter().enumerate() {
            let a = &px.entries[px.index_of(*xw, *xt)].2;
            let b = &py.entries[py.index_of(*yw, *yt)].2;
            let r = self.r_symbol(a, b, c);
            let target = gl_yx.col_of[&(*yw, *yt, *xw, *xt, c.clone())];
            bm.set(target, ci, r);
        }
        let mat = gl_yx.to_left.mul(&bm).mul(&gl_xy.from_left);
        Morphism::new(x.tensor(y), y.tensor(x), mat)
    }

    pub fn twist(&self, x: &ObjectExpr, inverted: bool) -> Morphism {
        let px = self.pbasis(x);
        let mut mat = Matrix::zeros(px.entries.len(), px.entries.len());
        for (i, (_, _, root)) in px.entries.iter().enumerate() {
            let th = self.twist_scalar(root);
            mat.set(i, i, if inverted { th.inv() } else { th });
        }
        Morphism::new(x.clone(), x.clone(), mat)
    }

    /// b for a single pure-word object.
    fn coev_word(&self, w: &PureWord) -> Morphism {
        let xe = word_expr(w);
        let cod = xe.tensor(&xe.dual());
        if w.is_empty() {
            return Morphism::new(ObjectExpr::unit(), cod, Matrix::identity(1));
        }
        if w.len() == 1 {
            let (l, k) = &w[0];
            return self.coev_atom(l, *k);
        }
        // b_{a⊗w'} = (id_a ⊗ b_{w'} ⊗ id_{a^∨}) ∘ b_a
        let a_word: PureWord = vec![w[0].clone()];
        let rest: PureWord = w[1..].to_vec();
        let a_expr = word_expr(&a_word);
        let b_a = self.coev_word(&a_word);
        let b_rest = self.coev_word(&rest);
        let mid = self.tensor(
            &self.tensor(&self.identity(&a_expr), &b_rest),
            &self.identity(&a_expr.dual()),
        );
        self.compose(&mid, &b_a)
    }

    fn coev_atom(&self, l: &Label, k: i32) -> Morphism {
        let x = ObjectExpr::from_atoms(vec![Atom { name: l.clone(), dual: k }]);
        let cod = x.tensor(&x.dual());
        let pb = self.pbasis(&cod);
        let y = self.eff(l, k);
        // The unique unit-root tree on (y, ȳ).
        let target_mids = vec![y, self.data.unit.clone()];
        let mut mat = Matrix::zeros(pb.entries.len(), 1);
        let ti = self
            .trees(&pb.words[0])
            .iter()
            .position(|t| t.mids == target_mids)
            .expect("missing unit channel in coevaluation word");
        mat.set(pb.index_of(0, ti), 0, FieldElement::one());
        Morphism::new(ObjectExpr::unit(), cod, mat)
    }

    fn ev_word(&self, w: &PureWord) -> Morphism {
        let xe = word_expr(w);
        let dom = xe.dual().tensor(&xe);
        if w.is_empty() {
            return Morphism::new(dom, ObjectExpr::unit(), Matrix::identity(1));
        }
        if w.len() == 1 {
            let (l, k) = &w[0];
            return self.ev_atom(l, *k);
        }
        // d_{a⊗w'} = d_{w'} ∘ (id_{w'^∨} ⊗ d_a ⊗ id_{w'})
        let a_word: PureWord = vec![w[0].clone()];
        let rest: PureWord = w[1..].to_vec();
        let rest_expr = word_expr(&rest);
        let d_a = self.ev_word(&a_word);
        let d_rest = self.ev_word(&rest);
        let mid = self.tensor(
            &self.tensor(&self.identity(&rest_expr.dual()), &d_a),
            &self.identity(&rest_expr),
        );
        self.compose(&d_rest, &mid)
    }

    fn ev_atom(&self, l: &Label, k: i32) -> Morphism {
        let delta = self.ev_coefficient(l, k);
        self.ev_atom_with(l, k, &delta)
    }

    fn ev_atom_with(&self, l: &Label, k: i32, coeff: &FieldElement) -> Morphism {
        let x = ObjectExpr::from_atoms(vec![Atom { name: l.clone(), dual: k }]);
        let dom = x.dual().tensor(&x);
        let pb = self.pbasis(&dom);
        let y = self.eff(l, k);
        let ybar = self.dual_label(&y);
        let target_mids = vec![ybar, self.data.unit.clone()];
        let ti = self
            .trees(&pb.words[0])
            .iter()
            .position(|t| t.mids == target_mids)
            .expect("missing unit channel in evaluation word");
        let mut mat = Matrix::zeros(1, pb.entries.len());
        mat.set(0, pb.index_of(0, ti), coeff.clone());
        Morphism::new(dom, ObjectExpr::unit(), mat)
    }

    /// The evaluation coefficient is derived from the zigzag
    /// (id ⊗ d) ∘ (b ⊗ id) = id rather than chosen.
    fn ev_coefficient(&self, l: &Label, k: i32) -> FieldElement {
        if let Some(hit) = self.caches.borrow().ev_coeff.get(&(l.clone(), k)) {
            return hit.clone();
        }
        let x = ObjectExpr::from_atoms(vec![Atom { name: l.clone(), dual: k }]);
        let cand = self.ev_atom_with(l, k, &FieldElement::one());
        let b = self.coev_atom(l, k);
        let lhs = self.compose(
            &self.tensor(&self.identity(&x), &cand),
            &self.tensor(&b, &self.identity(&x)),
        );
        assert_eq!(lhs.mat.rows(), 1);
        let mu = lhs.mat.get(0, 0).clone();
        assert!(!mu.is_zero(), "degenerate duality pairing on {l}^({k})");
        let delta = mu.inv();
        self.caches
            .borrow_mut()
            .ev_coeff
            .insert((l.clone(), k), delta.clone());
        delta
    }

    pub fn coev(&self, x: &ObjectExpr) -> Morphism {
        if x.is_unit() {
            return Morphism::new(ObjectExpr::unit(), ObjectExpr::unit(), Matrix::identity(1));
        }
        if x.atoms.len() == 1 {
            return self.coev_single_atom(&x.atoms[0]);
        }
        let a = ObjectExpr::from_atoms(vec![x.atoms[0].clone()]);
        let rest = ObjectExpr::from_atoms(x.atoms[1..].to_vec());
        let b_a = self.coev(&a);
        let b_rest = self.coev(&rest);
        let mid = self.tensor(
            &self.tensor(&self.identity(&a), &b_rest),
            &self.identity(&a.dual()),
        );
        self.compose(&mid, &b_a)
    }

    fn coev_single_atom(&self, atom: &Atom) -> Morphism {
        let x = ObjectExpr::from_atoms(vec![atom.clone()]);
        let cod = x.tensor(&x.dual());
        let words = self.atom_words(atom);
        if words.len() == 1 && words[0].len() <= 1 {
            if words[0].is_empty() {
                return Morphism::new(ObjectExpr::unit(), cod, Matrix::identity(1));
            }
            let (l, k) = &words[0][0];
            let base = self.coev_atom(l, *k);
            return Morphism::new(ObjectExpr::unit(), cod, base.mat);
        }
        // A named sum (or a multi-letter summand): assemble the diagonal
        // components b_{w_s} into the (s, s) blocks of P(X ⊗ X^∨).
        let pb = self.pbasis(&cod);
        let n = words.len();
        let mut mat = Matrix::zeros(pb.entries.len(), 1);
        for (s, w) in words.iter().enumerate() {
            let comp = self.coev_word(w);
            // Component word index inside X⊗X^∨: (s, s) block; the words of
            // the component's codomain w·w^∨ correspond 1:1 with trees there.
            let cat_word_idx = s * n + s;
            let comp_pb = self.pbasis(&comp.cod);
            assert_eq!(comp_pb.words.len(), 1);
            for (row, &(_, ti, _)) in comp_pb.entries.iter().enumerate() {
                let v = comp.mat.get(row, 0);
                if !v.is_zero() {
                    let target = pb.index_of(cat_word_idx, ti);
                    mat.set(target, 0, v.clone());
                }
            }
        }
        Morphism::new(ObjectExpr::unit(), cod, mat)
    }

    pub fn ev(&self, x: &ObjectExpr) -> Morphism {
        if x.is_unit() {
            return Morphism::new(ObjectExpr::unit(), ObjectExpr::unit(), Matrix::identity(1));
        }
        if x.atoms.len() == 1 {
            return self.ev_single_atom(&x.atoms[0]);
        }
        let a = ObjectExpr::from_atoms(vec![x.atoms[0].clone()]);
        let rest = ObjectExpr::from_atoms(x.atoms[1..].to_vec());
        let d_a = self.ev(&a);
        let d_rest = self.ev(&rest);
        let mid = self.tensor(
            &self.tensor(&self.identity(&rest.dual()), &d_a),
            &self.identity(&rest),
        );
        self.compose(&d_rest, &mid)
    }

    fn ev_single_atom(&self, atom: &Atom) -> Morphism {
        let x = ObjectExpr::from_atoms(vec![atom.clone()]);
        let dom = x.dual().tensor(&x);
        let words = self.atom_words(atom);
        if words.len() == 1 && words[0].len() <= 1 {
            if words[0].is_empty() {
                return Morphism::new(dom, ObjectExpr::unit(), Matrix::identity(1));
            }
            let (l, k) = &words[0][0];
            let base = self.ev_atom(l, *k);
            return Morphism::new(dom, ObjectExpr::unit(), base.mat);
        }
        let pb = self.pbasis(&dom);
        let n = words.len();
        let mut mat = Matrix::zeros(1, pb.entries.len());
        for (s, w) in words.iter().enumerate() {
            let comp = self.ev_word(w);
            // Dual expansion of X^∨ lists summand duals in the same order,
            // so the (t, s) word inside X^∨⊗X is t*n + s; diagonal t = s.
            let cat_word_idx = s * n + s;
            let comp_pb = self.pbasis(&comp.dom);
            assert_eq!(comp_pb.words.len(), 1);
            for (col, &(_, ti, _)) in comp_pb.entries.iter().enumerate() {
                let v = comp.mat.get(0, col);
                if !v.is_zero() {
                    mat.set(0, pb.index_of(cat_word_idx, ti), v.clone());
                }
            }
        }
        Morphism::new(dom, ObjectExpr::unit(), mat)
    }

    pub fn pivot(&self, x: &ObjectExpr, inverted: bool) -> Morphism {
        let cod = if inverted {
            // π⁻¹: X^∨∨ → X is also needed as a map X → "X with dual−2";
            // we keep the convention that pivot_inv(x): x.dualdual → x is
            // expressed with domain x and codomain x, power-shifted.
            x.clone()
        } else {
            x.dual().dual()
        };
        let pb = self.pbasis(x);
        let words = self.expand(x);
        let mut mat = Matrix::zeros(pb.entries.len(), pb.entries.len());
        for (i, (wi, _, _)) in pb.entries.iter().enumerate() {
            let w = &words[*wi];
            let mut coeff = FieldElement::one();
            for (l, k) in w {
                coeff = &coeff * &self.pivot_coefficient(l, *k);
            }
            if inverted {
                coeff = coeff.inv();
            }
            mat.set(i, i, coeff);
        }
        let (dom, cod) = if inverted { (x.dual().dual(), x.clone()) } else { (x.clone(), cod) };
        Morphism::new(dom, cod, mat)
    }

    /// Pivot coefficient of the atom (l, k), extended from the data on plain
    /// simples by π_{X^∨} = (π_X^∨)⁻¹.
    fn pivot_coefficient(&self, l: &Label, k: i32) -> FieldElement {
        if let Some(hit) = self.caches.borrow().pivot_coeff.get(&(l.clone(), k)) {
            return hit.clone();
        }
        let val = if k == 0 {
            self.data.pivot[l].clone()
        } else if k > 0 {
            let prev = self.pivot_coefficient(l, k - 1);
            let gamma = self.transpose_gamma(l, k - 1);
            (&prev * &gamma).inv()
        } else {
            let next = self.pivot_coefficient(l, k + 1);
            let gamma = self.transpose_gamma(l, k);
            (&next * &gamma).inv()
        };
        self.caches
            .borrow_mut()
            .pivot_coeff
            .insert((l.clone(), k), val.clone());
        val
    }

    /// Coefficient γ with (s·u)^∨ = s·γ·u' for the unit-coefficient map
    /// u: (l,j) → (l,j+2); computed through the genuine dualities.
    fn transpose_gamma(&self, l: &Label, j: i32) -> FieldElement {
        let x = ObjectExpr::from_atoms(vec![Atom { name: l.clone(), dual: j }]);
        let y = ObjectExpr::from_atoms(vec![Atom { name: l.clone(), dual: j + 2 }]);
        let u = Morphism::new(x.clone(), y.clone(), Matrix::identity(1));
        // (d_Y ⊗ id_{X^∨}) ∘ (id_{Y^∨} ⊗ u ⊗ id_{X^∨}) ∘ (id_{Y^∨} ⊗ b_X)
        let step1 = self.tensor(&self.identity(&y.dual()), &self.coev(&x));
        let mid = self.tensor(
            &self.identity(&y.dual()),
            &self.tensor(&u, &self.identity(&x.dual())),
        );
        let step3 = self.tensor(&self.ev(&y), &self.identity(&x.dual()));
        let t = self.compose(&step3, &self.compose(&mid, &step1));
        assert_eq!(t.mat.rows(), 1);
        assert_eq!(t.mat.cols(), 1);
        t.mat.get(0, 0).clone()
    }

    pub fn identity(&self, x: &ObjectExpr) -> Morphism {
        Morphism::new(x.clone(), x.clone(), Matrix::identity(self.presentation_dim(x)))
    }

    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Morphism {
        assert_eq!(g.dom, f.cod, "composition mismatch");
        Morphism::new(f.dom.clone(), g.cod.clone(), g.mat.mul(&f.mat))
    }

    pub fn hom_from_unit(&self, x: &ObjectExpr) -> Vec<Morphism> {
        let pb = self.pbasis(x);
        let dim = pb.entries.len();
        let mut out = Vec::new();
        for (i, (_, _, root)) in pb.entries.iter().enumerate() {
            if root == &self.data.unit {
                let mut mat = Matrix::zeros(dim, 1);
                mat.set(i, 0, FieldElement::one());
                out.push(Morphism::new(ObjectExpr::unit(), x.clone(), mat));
            }
        }
        out
    }

    pub fn hom_space(&self, x: &ObjectExpr, y: &ObjectExpr) -> Vec<Morphism> {
        let px = self.pbasis(x);
        let py = self.pbasis(y);
        let mut out = Vec::new();
        for (i, (_, _, ra)) in px.entries.iter().enumerate() {
            for (j, (_, _, rb)) in py.entries.iter().enumerate() {
                if ra == rb {
                    let mut mat = Matrix::zeros(py.entries.len(), px.entries.len());
                    mat.set(j, i, FieldElement::one());
                    out.push(Morphism::new(x.clone(), y.clone(), mat));
                }
            }
        }
        out
    }
}

fn validate_shape(data: &mut SkeletalData) -> Result<(), String> {
    let simples = data.simples.clone();
    let unit = data.unit.clone();
    if !simples.contains(&unit) {
        return Err(format!("unit {unit:?} is not among the simples"));
    }
    {
        let mut seen = simples.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != simples.len() {
            return Err("duplicate simple labels".into());
        }
    }
    // Duality: a total involution fixing the unit.
    for a in &simples {
        let Some(ad) = data.dual.get(a) else {
            return Err(format!("missing dual for {a:?}"));
        };
        if !simples.contains(ad) {
            return Err(format!("dual of {a:?} is not a simple"));
        }
        if data.dual.get(ad) != Some(a) {
            return Err(format!("duality is not involutive at {a:?}"));
        }
    }
    if data.dual[&unit] != unit {
        return Err("the unit must be self-dual".into());
    }
    // Fusion: total, canonical order, strict unit, rigidity.
    let order_of: BTreeMap<&Label, usize> = simples.iter().enumerate().map(|(i, s)| (s, i)).collect();
    for a in &simples {
        for b in &simples {
            let key = (a.clone(), b.clone());
            let Some(list) = data.fusion.get_mut(&key) else {
                return Err(format!("missing fusion rule for ({a:?}, {b:?})"));
            };
            list.sort_by_key(|c| order_of.get(c).copied().unwrap_or(usize::MAX));
            list.dedup();
            if list.iter().any(|c| !simples.contains(c)) {
                return Err(format!("fusion ({a:?},{b:?}) mentions unknown label"));
            }
            if list.is_empty() {
                return Err(format!("empty fusion for ({a:?},{b:?})"));
            }
        }
    }
    for a in &simples {
        if data.fusion[&(unit.clone(), a.clone())] != vec![a.clone()]
            || data.fusion[&(a.clone(), unit.clone())] != vec![a.clone()]
        {
            return Err(format!("fusion with the unit must be strict at {a:?}"));
        }
        let ad = data.dual[a].clone();
        for b in &simples {
            let has_unit = data.fusion[&(a.clone(), b.clone())].contains(&unit);
            if has_unit != (b == &ad) {
                return Err(format!(
                    "rigidity violated: unit in fusion ({a:?},{b:?}) iff dual, found otherwise"
                ));
            }
        }
    }
    // Fusion associativity at the level of multiplicities.
    for a in &simples {
        for b in &simples {
            for c in &simples {
                for d in &simples {
                    let lhs = data.fusion[&(a.clone(), b.clone())]
                        .iter()
                        .filter(|e| data.fusion[&((*e).clone(), c.clone())].contains(d))
                        .count();
                    let rhs = data.fusion[&(b.clone(), c.clone())]
                        .iter()
                        .filter(|f| data.fusion[&(a.clone(), (*f).clone())].contains(d))
                        .count();
                    if lhs != rhs {
                        return Err(format!(
                            "fusion not associative at ({a:?},{b:?},{c:?};{d:?})"
                        ));
                    }
                }
            }
        }
    }
    // Twists and pivots: defined and invertible on every simple; trivial on
    // the unit.
    for a in &simples {
        let th = data
            .twist
            .get(a)
            .ok_or_else(|| format!("missing twist for {a:?}"))?;
        if th.is_zero() {
            return Err(format!("twist of {a:?} is zero"));
        }
        let p = data
            .pivot
            .get(a)
            .ok_or_else(|| format!("missing pivot for {a:?}"))?;
        if p.is_zero() {
            return Err(format!("pivot of {a:?} is zero"));
        }
    }
    if !data.twist[&unit].is_one() {
        return Err("twist of the unit must be 1".into());
    }
    if !data.pivot[&unit].is_one() {
        return Err("pivot of the unit must be 1".into());
    }
    // Unit strictness of declared F-symbols.
    for ((a, b, c, _, _, _), v) in &data.f_symbols {
        if (a == &unit || b == &unit || c == &unit) && !v.is_one() {
            return Err("F-symbols involving the unit must be 1".into());
        }
    }
    // Scalar orders.
    let ord = data.order;
    let check_order = |fe: &FieldElement| fe.order() == 1 || fe.order() == ord;
    if !data.f_symbols.values().all(check_order)
        || !data.r_symbols.values().all(check_order)
        || !data.twist.values().all(check_order)
        || !data.pivot.values().all(check_order)
    {
        return Err("scalar with a cyclotomic order foreign to the category".into());
    }
    // Named sums: valid labels, no clash with simples, reserved coend name.
    for (name, words) in &data.sums {
        if simples.contains(name) {
            return Err(format!("sum name {name:?} clashes with a simple"));
        }
        for w in words {
            for (l, _) in w {
                if !simples.contains(l) {
                    return Err(format!("sum {name:?} mentions unknown label {l:?}"));
                }
            }
        }
    }
    if data.sums.contains_key(COEND_NAME) {
        return Err(format!("object name {COEND_NAME:?} is reserved for the coend"));
    }
    // Register the coend: K = ⊕_a a ⊗ a^∨.
    let coend_words: Vec<PureWord> = simples
        .iter()
        .map(|a| vec![(a.clone(), 0), (a.clone(), 1)])
        .collect();
    data.sums.insert(COEND_NAME.into(), coend_words);
    Ok(())
}
