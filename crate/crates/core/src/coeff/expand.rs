//! Dense expansion of a product of linear forms, used as an oracle for the
//! coefficient formula at toy sizes.

use crate::constructions::ProofModel;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::limits::Limits;

/// `constant + sum_i coeffs[i] * X_i`
struct Linear {
    constant: Fp,
    coeffs: Vec<(usize, Fp)>,
}

fn linear_factors(model: &ProofModel) -> Vec<Linear> {
    let p = model.prime();
    let d = model.num_vars();
    let one = p.one();
    let mut out = Vec::new();
    for &x in model.roots() {
        out.push(Linear {
            constant: model.shift() - x,
            coeffs: (0..d).map(|i| (i, one)).collect(),
        });
    }
    if model.vandermonde() {
        for j in 1..d {
            for i in 0..j {
                out.push(Linear {
                    constant: p.zero(),
                    coeffs: vec![(j, one), (i, -one)],
                });
            }
        }
    }
    if let Some(cut) = model.plus_cutoff() {
        for j in cut.max(1)..d {
            for i in 0..j {
                out.push(Linear {
                    constant: p.zero(),
                    coeffs: vec![(j, one), (i, one)],
                });
            }
        }
    }
    out
}

/// Coefficient of `prod X_i^{monomial[i]}` in the model polynomial.
///
/// Exponents only grow under multiplication by linear forms, so terms are
/// truncated to the box `[0, monomial[i]]` in each variable.
pub fn expansion_coefficient_of(model: &ProofModel, monomial: &[u32], limits: &Limits) -> Result<Fp> {
    let d = model.num_vars();
    if monomial.len() != d {
        return Err(Error::BadParams(format!(
            "monomial has {} exponents, model has {d} variables",
            monomial.len()
        )));
    }
    if d > limits.max_expand_vars {
        return Err(Error::TooLarge(format!(
            "{d} variables (limit {})",
            limits.max_expand_vars
        )));
    }
    if model.total_degree() > limits.max_expand_degree {
        return Err(Error::TooLarge(format!(
            "total degree {} (limit {})",
            model.total_degree(),
            limits.max_expand_degree
        )));
    }
    let p = model.prime();
    let dims: Vec<usize> = monomial.iter().map(|&k| k as usize + 1).collect();
    let mut strides = vec![1usize; d];
    for i in (0..d.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let len: usize = dims.iter().product();
    let coord = |idx: usize, i: usize| (idx / strides[i]) % dims[i];

    let mut poly = vec![p.zero(); len];
    poly[0] = p.one();
    for factor in linear_factors(model) {
        let mut next = vec![p.zero(); len];
        for (idx, slot) in next.iter_mut().enumerate() {
            let mut acc = factor.constant * poly[idx];
            for &(i, c) in &factor.coeffs {
                if coord(idx, i) > 0 {
                    acc += c * poly[idx - strides[i]];
                }
            }
            *slot = acc;
        }
        poly = next;
    }
    Ok(poly[len - 1])
}

pub fn expansion_coefficient(model: &ProofModel, limits: &Limits) -> Result<Fp> {
    expansion_coefficient_of(model, model.monomial(), limits)
}
