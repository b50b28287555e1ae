//! Finite ribbon categories with computable structural morphisms.
//!
//! Objects are flat tensor words of named atoms; the unit is the empty word
//! and duals are tracked as integer powers on atoms (the double dual is a
//! *different expression*, identified with the original only through the
//! pivot). Morphisms are exact matrices between presentation spaces:
//!
//! - in the [`skeletal`] backend the presentation of X is ⊕_c Hom(c, X) over
//!   simple c, in the canonical left-nested fusion-tree basis;
//! - in the [`hopf`] backend it is the underlying vector space of the module.
//!
//! Composition is matrix multiplication and morphism equality is matrix
//! equality, so every categorical identity downstream becomes an exact
//! matrix identity. The two backends expose one interface, [`Category`].

pub mod axioms;
pub mod hopf;
pub mod samples;
pub mod skeletal;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Matrix;
use crate::scalar::FieldElement;

/// One tensor factor: a named object with a dual power. `dual` counts
/// applications of (−)^∨; it may be negative for formal predual expressions,
/// though the engine itself only ever increments it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    pub name: String,
    pub dual: i32,
}

impl Atom {
    pub fn plain(name: &str) -> Self {
        Atom { name: String::from(name), dual: 0 }
    }

    pub fn dualize(&self) -> Self {
        Atom { name: self.name.clone(), dual: self.dual + 1 }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.dual >= 0 {
            for _ in 0..self.dual {
                write!(f, "'")?;
            }
        } else {
            write!(f, "~{}", -self.dual)?;
        }
        Ok(())
    }
}

/// A tensor word of atoms; the empty word is the unit object.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObjectExpr {
    pub atoms: Vec<Atom>,
}

impl ObjectExpr {
    pub fn unit() -> Self {
        ObjectExpr { atoms: Vec::new() }
    }

    pub fn atom(name: &str) -> Self {
        ObjectExpr { atoms: vec![Atom::plain(name)] }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Self {
        ObjectExpr { atoms }
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn tensor(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        ObjectExpr { atoms }
    }

    /// (X₁⊗…⊗X_k)^∨ = X_k^∨⊗…⊗X₁^∨.
    pub fn dual(&self) -> ObjectExpr {
        ObjectExpr { atoms: self.atoms.iter().rev().map(Atom::dualize).collect() }
    }

    /// The word split at `i`: (prefix, suffix).
    pub fn split(&self, i: usize) -> (ObjectExpr, ObjectExpr) {
        (
            ObjectExpr { atoms: self.atoms[..i].to_vec() },
            ObjectExpr { atoms: self.atoms[i..].to_vec() },
        )
    }

    pub fn slice(&self, lo: usize, hi: usize) -> ObjectExpr {
        ObjectExpr { atoms: self.atoms[lo..hi].to_vec() }
    }

    pub fn power(x: &ObjectExpr, n: usize) -> ObjectExpr {
        let mut out = ObjectExpr::unit();
        for _ in 0..n {
            out = out.tensor(x);
        }
        out
    }
}

impl fmt::Debug for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{a:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A morphism: an exact matrix from the presentation of `dom` to the
/// presentation of `cod`. Equality is strict equality of all three parts.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    pub dom: ObjectExpr,
    pub cod: ObjectExpr,
    pub mat: Matrix,
}

impl Morphism {
    pub fn new(dom: ObjectExpr, cod: ObjectExpr, mat: Matrix) -> Self {
        Morphism { dom, cod, mat }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.mat.is_identity()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} via {:?}", self.dom, self.cod, self.mat)
    }
}

/// The uniform interface over the two backends.
#[derive(Clone)]
pub enum Category {
    Skeletal(skeletal::SkeletalCat),
    Hopf(hopf::HopfCat),
}

impl Category {
    pub fn cyclotomic_order(&self) -> u32 {
        match self {
            Category::Skeletal(c) => c.data.order,
            Category::Hopf(c) => c.data.order,
        }
    }

    /// Reserved name of the coend object (a genuine atom in both backends).
    pub fn coend_object(&self) -> ObjectExpr {
        ObjectExpr::atom(COEND_NAME)
    }

    pub fn presentation_dim(&self, x: &ObjectExpr) -> usize {
        match self {
            Category::Skeletal(c) => c.presentation_dim(x),
            Category::Hopf(c) => c.presentation_dim(x),
        }
    }

    pub fn id(&self, x: &ObjectExpr) -> Morphism {
        Morphism::new(x.clone(), x.clone(), Matrix::identity(self.presentation_dim(x)))
    }

    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Morphism {
        assert_eq!(
            g.dom, f.cod,
            "composition mismatch: {:?} after {:?}",
            g.dom, f.cod
        );
        Morphism::new(f.dom.clone(), g.cod.clone(), g.mat.mul(&f.mat))
    }

    /// Compose a chain right-to-left: `chain([f3, f2, f1]) = f3∘f2∘f1`.
    pub fn chain(&self, fs: &[&Morphism]) -> Morphism {
        assert!(!fs.is_empty());
        let mut acc = fs[fs.len() - 1].clone();
        for f in fs[..fs.len() - 1].iter().rev() {
            acc = self.compose(f, &acc);
        }
        acc
    }

    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        match self {
            Category::Skeletal(c) => c.tensor(f, g),
            Category::Hopf(c) => c.tensor(f, g),
        }
    }

    pub fn tensor_id_left(&self, x: &ObjectExpr, f: &Morphism) -> Morphism {
        self.tensor(&self.id(x), f)
    }

    pub fn tensor_id_right(&self, f: &Morphism, x: &ObjectExpr) -> Morphism {
        self.tensor(f, &self.id(x))
    }

    pub fn braiding(&self, x: &ObjectExpr, y: &ObjectExpr) -> Morphism {
        match self {
            Category::Skeletal(c) => c.braiding(x, y),
            Category::Hopf(c) => c.braiding(x, y),
        }
    }

    pub fn braiding_inv(&self, x: &ObjectExpr, y: &ObjectExpr) -> Morphism {
        let c = self.braiding(y, x);
        Morphism::new(
            x.tensor(y),
            y.tensor(x),
            c.mat.inverse().expect("braiding is invertible"),
        )
    }

    pub fn twist(&self, x: &ObjectExpr) -> Morphism {
        match self {
            Category::Skeletal(c) => c.twist(x, false),
            Category::Hopf(c) => c.twist(x, false),
        }
    }

    pub fn twist_inv(&self, x: &ObjectExpr) -> Morphism {
        match self {
            Category::Skeletal(c) => c.twist(x, true),
            Category::Hopf(c) => c.twist(x, true),
        }
    }

    /// Right coevaluation b_X: 1 → X⊗X^∨.
    pub fn coev(&self, x: &ObjectExpr) -> Morphism {
        match self {
            Category::Skeletal(c) => c.coev(x),
            Category::Hopf(c) => c.coev(x),
        }
    }

    /// Right evaluation d_X: X^∨⊗X → 1.
    pub fn ev(&self, x: &ObjectExpr) -> Morphism {
        match self {
            Category::Skeletal(c) => c.ev(x),
            Category::Hopf(c) => c.ev(x),
        }
    }

    /// Pivot π_X: X → X^∨∨, monoidal and compatible with the twist.
    pub fn pivot(&self, x: &ObjectExpr) -> Morphism {
        match self {
            Category::Skeletal(c) => c.pivot(x, false),
            Category::Hopf(c) => c.pivot(x, false),
        }
    }

    pub fn pivot_inv(&self, x: &ObjectExpr) -> Morphism {
        match self {
            Category::Skeletal(c) => c.pivot(x, true),
            Category::Hopf(c) => c.pivot(x, true),
        }
    }

    /// Left evaluation d'_X: X⊗X^∨ → 1, derived from the pivot.
    pub fn ev_left(&self, x: &ObjectExpr) -> Morphism {
        let d = self.ev(&x.dual());
        let p = self.pivot(x);
        let idd = self.id(&x.dual());
        self.compose(&d, &self.tensor(&p, &idd))
    }

    /// Left coevaluation b'_X: 1 → X^∨⊗X, derived from the pivot.
    pub fn coev_left(&self, x: &ObjectExpr) -> Morphism {
        let b = self.coev(&x.dual());
        let p = self.pivot_inv(x);
        let idd = self.id(&x.dual());
        self.compose(&self.tensor(&idd, &p), &b)
    }

    /// The transpose f^∨: Y^∨ → X^∨ of f: X → Y.
    pub fn transpose(&self, f: &Morphism) -> Morphism {
        let x = &f.dom;
        let y = &f.cod;
        let ydual = y.dual();
        let xdual = x.dual();
        // (d_Y ⊗ id) ∘ (id ⊗ f ⊗ id) ∘ (id ⊗ b_X)
        let step1 = self.tensor_id_left(&ydual, &self.coev(x));
        let mid = self.tensor_id_left(&ydual, &self.tensor_id_right(f, &xdual));
        let step3 = self.tensor_id_right(&self.ev(y), &xdual);
        self.chain(&[&step3, &mid, &step1])
    }

    /// The scalar of an endomorphism of the unit.
    pub fn scalar_of(&self, f: &Morphism) -> FieldElement {
        assert!(f.dom.is_unit() && f.cod.is_unit());
        f.mat.get(0, 0).clone()
    }

    /// Categorical (left) trace of f: X → X, as a scalar.
    pub fn trace(&self, f: &Morphism) -> FieldElement {
        let x = &f.dom;
        let t = self.chain(&[
            &self.ev_left(x),
            &self.tensor_id_right(f, &x.dual()),
            &self.coev(x),
        ]);
        self.scalar_of(&t)
    }

    /// Quantum dimension of an object.
    pub fn qdim(&self, x: &ObjectExpr) -> FieldElement {
        self.trace(&self.id(x))
    }

    /// Basis of Hom(1, X) as morphisms from the unit.
    pub fn hom_from_unit(&self, x: &ObjectExpr) -> Vec<Morphism> {
        match self {
            Category::Skeletal(c) => c.hom_from_unit(x),
            Category::Hopf(c) => c.hom_from_unit(x),
        }
    }

    /// Basis of Hom(X, Y).
    pub fn hom_space(&self, x: &ObjectExpr, y: &ObjectExpr) -> Vec<Morphism> {
        match self {
            Category::Skeletal(c) => c.hom_space(x, y),
            Category::Hopf(c) => c.hom_space(x, y),
        }
    }

    pub fn hom_dim(&self, x: &ObjectExpr, y: &ObjectExpr) -> usize {
        self.hom_space(x, y).len()
    }

    /// Resolve a named object: an atom whose name the backend knows.
    pub fn object_by_name(&self, name: &str) -> Result<ObjectExpr, String> {
        let known = match self {
            Category::Skeletal(c) => {
                c.data.simples.iter().any(|s| s == name) || c.data.sums.contains_key(name)
            }
            Category::Hopf(c) => c.data.modules.contains_key(name),
        };
        if known || name == COEND_NAME {
            Ok(ObjectExpr::atom(name))
        } else {
            Err(format!("unknown object name {name:?}"))
        }
    }

    pub fn check_axioms(&self) -> axioms::AxiomReport {
        match self {
            Category::Skeletal(c) => axioms::check_skeletal(c),
            Category::Hopf(c) => axioms::check_hopf(c),
        }
    }
}

/// Reserved atom name for the coend object K = ∫^X X⊗X^∨.
pub const COEND_NAME: &str = "K";
