use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// Input term `(Q, P, ⟨Q|H|P⟩)` before hermitization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub q: Vec<usize>,
    pub p: Vec<usize>,
    pub coefficient: Complex64,
}

impl Term {
    pub fn new(q: Vec<usize>, p: Vec<usize>, coefficient: Complex64) -> Self {
        Self { q, p, coefficient }
    }

    pub fn real(q: Vec<usize>, p: Vec<usize>, value: f64) -> Self {
        Self::new(q, p, Complex64::new(value, 0.0))
    }

    fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.q.clone(), self.p.clone())
    }

    fn conjugate_key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.p.clone(), self.q.clone())
    }
}

/// Indexed, Hermitian monomial table.
///
/// Monomial `j` and its conjugate `conjugate_index(j)` satisfy
/// `(b†_{Q_j} b_{P_j})† = b†_{Q_k} b_{P_k}`; diagonal monomials are their own
/// conjugate. `lambda` is the largest coefficient magnitude and `d_pad` the
/// index-space size (next power of two of the monomial count).
#[derive(Debug, Clone)]
pub struct SqHamiltonian {
    n_sp: usize,
    monomials: Vec<Monomial>,
    conjugate: Vec<usize>,
    lambda: f64,
    d_pad: usize,
}

/// Builds the full Hermitian monomial table from an "upper half" term list.
///
/// Off-diagonal conjugates are appended after all input terms, in input
/// order. Diagonal terms appear once. A term whose conjugate is also in the
/// input is rejected; use [`fold_conjugates`] on complete lists.
pub fn hermitize(n_sp: usize, terms: &[Term]) -> Result<SqHamiltonian> {
    let mut seen: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut monomials = Vec::with_capacity(2 * terms.len());
    for t in terms {
        let m = Monomial::new(t.q.clone(), t.p.clone(), t.coefficient)?;
        if let Some(top) = m.max_orbital() {
            if top >= n_sp {
                return Err(Error::OrbitalOutOfRange { orbital: top, n_sp });
            }
        }
        if seen.insert(t.key(), monomials.len()).is_some() {
            return Err(Error::DuplicateTerm {
                q: t.q.clone(),
                p: t.p.clone(),
            });
        }
        if m.is_diagonal() && t.coefficient.im != 0.0 {
            return Err(Error::NonRealDiagonal(t.q.clone()));
        }
        monomials.push(m);
    }
    for t in terms {
        if t.q != t.p && seen.contains_key(&t.conjugate_key()) {
            return Err(Error::ConjugatePresent {
                q: t.q.clone(),
                p: t.p.clone(),
            });
        }
    }

    let n_in = monomials.len();
    let mut conjugate: Vec<usize> = (0..n_in).collect();
    for j in 0..n_in {
        if !monomials[j].is_diagonal() {
            let k = monomials.len();
            monomials.push(monomials[j].conjugate());
            conjugate[j] = k;
            conjugate.push(j);
        }
    }
    SqHamiltonian::from_parts(n_sp, monomials, conjugate)
}

/// Reduces a complete Hermitian term list to its upper half.
///
/// For every conjugate pair present in `terms` the member whose `(Q, P)` key
/// sorts first is kept; the pair must agree to within `tol` (absolute).
/// Terms without a partner pass through unchanged.
pub fn fold_conjugates(terms: &[Term], tol: f64) -> Result<Vec<Term>> {
    let mut index: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    for (i, t) in terms.iter().enumerate() {
        if index.insert(t.key(), i).is_some() {
            return Err(Error::DuplicateTerm {
                q: t.q.clone(),
                p: t.p.clone(),
            });
        }
    }
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.q == t.p {
            out.push(t.clone());
            continue;
        }
        match index.get(&t.conjugate_key()) {
            Some(&k) => {
                let partner = &terms[k];
                let mismatch = (partner.coefficient.conj() - t.coefficient).norm();
                if mismatch > tol {
                    return Err(Error::ConjugateMismatch {
                        q: t.q.clone(),
                        p: t.p.clone(),
                        mismatch,
                    });
                }
                if t.key() < t.conjugate_key() {
                    out.push(t.clone());
                }
            }
            None => out.push(t.clone()),
        }
    }
    Ok(out)
}

impl SqHamiltonian {
    fn from_parts(n_sp: usize, monomials: Vec<Monomial>, conjugate: Vec<usize>) -> Result<Self> {
        let max = monomials
            .iter()
            .map(|m| m.coefficient().norm())
            .fold(0.0f64, f64::max);
        // An empty Hamiltonian still needs a positive scale.
        let lambda = if max > 0.0 { max } else { 1.0 };
        let d_pad = monomials.len().max(1).next_power_of_two();
        Ok(Self {
            n_sp,
            monomials,
            conjugate,
            lambda,
            d_pad,
        })
    }

    pub fn n_sp(&self) -> usize {
        self.n_sp
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, j: usize) -> &Monomial {
        &self.monomials[j]
    }

    /// Number of monomials `D`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn d_pad(&self) -> usize {
        self.d_pad
    }

    /// Number of qubits in the index register.
    pub fn index_qubits(&self) -> usize {
        self.d_pad.trailing_zeros() as usize
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Block-encoding normalisation `D_pad · Λ`.
    pub fn scale(&self) -> f64 {
        self.d_pad as f64 * self.lambda
    }

    pub fn conjugate_index(&self, j: usize) -> usize {
        self.conjugate[j]
    }

    /// `ρ_j = |h_j| / Λ`.
    pub fn rho(&self, j: usize) -> f64 {
        (self.monomials[j].coefficient().norm() / self.lambda).min(1.0)
    }

    /// `θ_j = arg h_j ∈ (-π, π]`.
    pub fn theta(&self, j: usize) -> f64 {
        let t = self.monomials[j].coefficient().arg();
        if t <= -std::f64::consts::PI {
            std::f64::consts::PI
        } else {
            t
        }
    }

    /// The upper-half term list: diagonal terms and the first member of each
    /// conjugate pair, in table order.
    pub fn upper_terms(&self) -> Vec<Term> {
        self.monomials
            .iter()
            .enumerate()
            .filter(|&(j, _)| self.conjugate[j] >= j)
            .map(|(_, m)| {
                Term::new(
                    m.creations().to_vec(),
                    m.annihilations().to_vec(),
                    m.coefficient(),
                )
            })
            .collect()
    }

    /// Copy with monomial `j`'s coefficient replaced and `Λ` kept fixed.
    ///
    /// Used to inject faults into an encoding while leaving the reference
    /// Hamiltonian untouched.
    pub fn with_coefficient(&self, j: usize, coefficient: Complex64) -> Result<Self> {
        if coefficient.norm() > self.lambda * (1.0 + 1e-12) {
            return Err(Error::ScaleViolation {
                magnitude: coefficient.norm(),
                lambda: self.lambda,
            });
        }
        let mut out = self.clone();
        out.monomials[j] = out.monomials[j].with_coefficient(coefficient);
        Ok(out)
    }
}
