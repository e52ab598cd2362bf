//! A small calculus of natural transformations between composites of
//! twist functors on a module category.
//!
//! A functor word `[a, b, c]` over an alphabet of automorphisms denotes
//! `F_a F_b F_c`, where `F_x` twists by the automorphism attached to
//! letter `x`. Every twist is the identity on morphisms, so a left
//! whisker does not change components, while a right whisker evaluates
//! the inner transformation at a twisted module.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{twisted_module, Algebra, AlgebraMap, ModuleRep};
use crate::scalar::{Matrix, Scalar};

pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nat {
    /// Component at M is `R_M(unit)`.
    Elem { src: Word, tgt: Word, unit: Vec<Scalar> },
    Inv(Box<Nat>),
    Id(Word),
    /// `a ∘ b`.
    Comp(Box<Nat>, Box<Nat>),
    /// `F_w η`.
    Left(Word, Box<Nat>),
    /// `η F_w`.
    Right(Box<Nat>, Word),
    Scale(Scalar, Box<Nat>),
}

impl Nat {
    pub fn comp(a: Nat, b: Nat) -> Nat {
        Nat::Comp(Box::new(a), Box::new(b))
    }

    /// `a ∘ b ∘ c ∘ …`, rightmost applied first.
    pub fn chain(parts: Vec<Nat>) -> Nat {
        let mut it = parts.into_iter().rev();
        let mut acc = it.next().expect("non-empty chain");
        for p in it {
            acc = Nat::comp(p, acc);
        }
        acc
    }

    pub fn left(w: Word, n: Nat) -> Nat {
        if w.is_empty() {
            n
        } else {
            Nat::Left(w, Box::new(n))
        }
    }

    pub fn right(n: Nat, w: Word) -> Nat {
        if w.is_empty() {
            n
        } else {
            Nat::Right(Box::new(n), w)
        }
    }

    pub fn inv(n: Nat) -> Nat {
        Nat::Inv(Box::new(n))
    }

    pub fn scale(s: Scalar, n: Nat) -> Nat {
        Nat::Scale(s, Box::new(n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NatError {
    Type(String),
    /// A primitive component is not a natural transformation.
    NotNatural(String),
    NotInvertible,
    UnknownLetter(usize),
}

impl core::fmt::Display for NatError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NatError::Type(s) => write!(f, "ill-typed transformation: {s}"),
            NatError::NotNatural(s) => write!(f, "component is not natural: {s}"),
            NatError::NotInvertible => write!(f, "component is not invertible"),
            NatError::UnknownLetter(x) => write!(f, "unknown functor letter {x}"),
        }
    }
}

/// Alphabet of twist functors over one algebra.
#[derive(Clone, Debug)]
pub struct TwistCalculus {
    pub algebra: Algebra,
    pub letters: Vec<AlgebraMap>,
}

fn cat(a: &[usize], b: &[usize]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

impl TwistCalculus {
    pub fn new(algebra: Algebra, letters: Vec<AlgebraMap>) -> TwistCalculus {
        TwistCalculus { algebra, letters }
    }

    /// Adds a letter and returns its index.
    pub fn push_letter(&mut self, sigma: AlgebraMap) -> usize {
        self.letters.push(sigma);
        self.letters.len() - 1
    }

    /// `F_{w_1}(F_{w_2}(… F_{w_r}(M)))`.
    pub fn apply_word(&self, w: &[usize], m: &ModuleRep) -> Result<ModuleRep, NatError> {
        let mut cur = m.clone();
        for &x in w.iter().rev() {
            let sigma = self.letters.get(x).ok_or(NatError::UnknownLetter(x))?;
            cur = twisted_module(&self.algebra, sigma, &cur)
                .map_err(|e| NatError::Type(format!("{e}")))?;
        }
        Ok(cur)
    }

    /// Source and target words.
    pub fn typecheck(&self, n: &Nat) -> Result<(Word, Word), NatError> {
        match n {
            Nat::Elem { src, tgt, unit } => {
                if unit.len() != self.algebra.dim() {
                    return Err(NatError::Type("unit has wrong length".into()));
                }
                for &x in src.iter().chain(tgt) {
                    if x >= self.letters.len() {
                        return Err(NatError::UnknownLetter(x));
                    }
                }
                Ok((src.clone(), tgt.clone()))
            }
            Nat::Inv(a) => {
                let (s, t) = self.typecheck(a)?;
                Ok((t, s))
            }
            Nat::Id(w) => Ok((w.clone(), w.clone())),
            Nat::Comp(a, b) => {
                let (sa, ta) = self.typecheck(a)?;
                let (sb, tb) = self.typecheck(b)?;
                if tb != sa {
                    return Err(NatError::Type(format!("cannot compose {sa:?}→{ta:?} after {sb:?}→{tb:?}")));
                }
                Ok((sb, ta))
            }
            Nat::Left(w, a) => {
                let (s, t) = self.typecheck(a)?;
                Ok((cat(w, &s), cat(w, &t)))
            }
            Nat::Right(a, w) => {
                let (s, t) = self.typecheck(a)?;
                Ok((cat(&s, w), cat(&t, w)))
            }
            Nat::Scale(_, a) => self.typecheck(a),
        }
    }

    /// `σ_w(v)`, so that `F_w M` acts on `r` as `M` acts on `σ_w(r)`; the
    /// first letter is applied first.
    fn word_map(&self, w: &[usize], v: &[Scalar]) -> Result<Vec<Scalar>, NatError> {
        let mut cur = v.to_vec();
        for &x in w {
            cur = self.letters.get(x).ok_or(NatError::UnknownLetter(x))?.apply(&cur);
        }
        Ok(cur)
    }

    /// Right multiplication by `unit` is natural `F_src → F_tgt` iff
    /// `σ_src(r)·unit = unit·σ_tgt(r)` for every basis element `r`.
    pub fn is_natural(&self, src: &[usize], tgt: &[usize], unit: &[Scalar]) -> Result<bool, NatError> {
        let a = &self.algebra;
        for i in 0..a.dim() {
            let r = a.basis_vector(i);
            if a.mul(&self.word_map(src, &r)?, unit) != a.mul(unit, &self.word_map(tgt, &r)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Component at `m`. Primitive components are checked to be natural.
    pub fn eval(&self, n: &Nat, m: &ModuleRep) -> Result<Matrix, NatError> {
        if m.action.len() != self.algebra.dim() {
            return Err(NatError::Type("module over a different algebra".into()));
        }
        self.eval_at(n, m, &[])
    }

    /// Component at `F_w m`.
    fn eval_at(&self, n: &Nat, m: &ModuleRep, w: &[usize]) -> Result<Matrix, NatError> {
        match n {
            Nat::Elem { src, tgt, unit } => {
                if unit.len() != self.algebra.dim() {
                    return Err(NatError::Type("unit has wrong length".into()));
                }
                if !self.is_natural(src, tgt, unit)? {
                    return Err(NatError::NotNatural(format!("{src:?} → {tgt:?}")));
                }
                Ok(m.act(&self.algebra, &self.word_map(w, unit)?))
            }
            Nat::Inv(a) => self.eval_at(a, m, w)?.inverse().ok_or(NatError::NotInvertible),
            Nat::Id(_) => Ok(Matrix::identity(self.algebra.field(), m.dim)),
            Nat::Comp(a, b) => Ok(self.eval_at(a, m, w)?.mul(&self.eval_at(b, m, w)?)),
            Nat::Left(_, a) => self.eval_at(a, m, w),
            Nat::Right(a, v) => self.eval_at(a, m, &cat(v, w)),
            Nat::Scale(s, a) => Ok(self.eval_at(a, m, w)?.scale(s)),
        }
    }

    /// Both sides well typed with equal types and equal components on
    /// every probe.
    pub fn equal_on(&self, a: &Nat, b: &Nat, probes: &[ModuleRep]) -> Result<bool, NatError> {
        let ta = self.typecheck(a)?;
        let tb = self.typecheck(b)?;
        if ta != tb {
            return Err(NatError::Type(format!("{ta:?} vs {tb:?}")));
        }
        for m in probes {
            if self.eval(a, m)? != self.eval(b, m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Like [`equal_on`](Self::equal_on) but up to a common nonzero
    /// scalar; returns it when one exists.
    pub fn ratio_on(&self, a: &Nat, b: &Nat, probes: &[ModuleRep]) -> Result<Option<Scalar>, NatError> {
        let ta = self.typecheck(a)?;
        let tb = self.typecheck(b)?;
        if ta != tb {
            return Err(NatError::Type(format!("{ta:?} vs {tb:?}")));
        }
        let mut ratio: Option<Scalar> = None;
        for m in probes {
            if m.dim == 0 {
                continue;
            }
            let r = match self.eval(a, m)?.scalar_ratio(&self.eval(b, m)?) {
                Some(r) => r,
                None => return Ok(None),
            };
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev != r => return Ok(None),
                _ => {}
            }
        }
        Ok(ratio)
    }
}

impl Nat {
    /// Adds `offset` to every letter, for embedding into a larger alphabet.
    pub fn shifted(&self, offset: usize) -> Nat {
        let sh = |w: &Word| w.iter().map(|x| x + offset).collect::<Word>();
        match self {
            Nat::Elem { src, tgt, unit } => Nat::Elem { src: sh(src), tgt: sh(tgt), unit: unit.clone() },
            Nat::Inv(a) => Nat::inv(a.shifted(offset)),
            Nat::Id(w) => Nat::Id(sh(w)),
            Nat::Comp(a, b) => Nat::comp(a.shifted(offset), b.shifted(offset)),
            Nat::Left(w, a) => Nat::Left(sh(w), Box::new(a.shifted(offset))),
            Nat::Right(a, w) => Nat::Right(Box::new(a.shifted(offset)), sh(w)),
            Nat::Scale(s, a) => Nat::scale(s.clone(), a.shifted(offset)),
        }
    }
}
