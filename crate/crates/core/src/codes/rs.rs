//! Berlekamp–Welch decoding in linear-system form.

use thiserror::Error;

use crate::field::Field;
use crate::poly::{lagrange_interpolate, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("received word has {got} slots, code length is {expected}")]
    Length { expected: usize, got: usize },
    #[error("degree-{degree} payload needs {needed} responses, only {available} arrived")]
    TooFewResponses {
        degree: usize,
        needed: usize,
        available: usize,
    },
    #[error("no degree-{degree} polynomial within {radius} errors of the received word")]
    Uncorrectable { degree: usize, radius: usize },
}

/// Finds the unique polynomial of degree `<= degree` that disagrees with at
/// most `floor((n' - degree - 1) / 2)` of the `n'` non-erased slots.
pub fn decode_polynomial<F: Field>(
    field: &F,
    points: &[F::Elem],
    slots: &[Option<F::Elem>],
    degree: usize,
) -> Result<Poly<F::Elem>, DecodeError> {
    let pts: Vec<(F::Elem, F::Elem)> = points
        .iter()
        .zip(slots)
        .filter_map(|(x, y)| y.as_ref().map(|y| (x.clone(), y.clone())))
        .collect();
    let available = pts.len();
    if available < degree + 1 {
        return Err(DecodeError::TooFewResponses {
            degree,
            needed: degree + 1,
            available,
        });
    }
    let radius = (available - degree - 1) / 2;
    let uncorrectable = DecodeError::Uncorrectable { degree, radius };
    let within_radius = |p: &Poly<F::Elem>| {
        pts.iter().filter(|(x, y)| p.eval(field, x) != *y).count() <= radius
    };

    // Error-free words are the common case.
    let guess = lagrange_interpolate(field, &pts[..degree + 1]).expect("distinct points");
    if within_radius(&guess) {
        return Ok(guess);
    }
    if radius == 0 {
        return Err(uncorrectable);
    }

    // Unknowns: Q_0..Q_{degree+radius}, then E_0..E_{radius-1}; E is monic of
    // degree `radius`. Equations: Q(x_i) - y_i E(x_i) = y_i x_i^radius.
    let q_len = degree + radius + 1;
    let cols = q_len + radius;
    let rows: Vec<Vec<F::Elem>> = pts
        .iter()
        .map(|(x, y)| {
            let mut row = Vec::with_capacity(cols + 1);
            let mut pow = field.one();
            let mut powers = Vec::with_capacity(q_len);
            for _ in 0..q_len {
                powers.push(pow.clone());
                pow = field.mul(&pow, x);
            }
            row.extend(powers.iter().cloned());
            row.extend(powers[..radius].iter().map(|p| field.neg(&field.mul(y, p))));
            row.push(field.mul(y, &powers[radius]));
            row
        })
        .collect();
    let sol = solve_linear(field, rows, cols).ok_or_else(|| uncorrectable.clone())?;
    let q = Poly::from_coeffs(field, sol[..q_len].to_vec());
    let mut e_coeffs = sol[q_len..].to_vec();
    e_coeffs.push(field.one());
    let e = Poly::from_coeffs(field, e_coeffs);
    let (p, rem) = q.div_rem(field, &e);
    if !rem.is_zero() || p.degree().is_some_and(|d| d > degree) || !within_radius(&p) {
        return Err(uncorrectable);
    }
    Ok(p)
}

/// Gauss–Jordan elimination on an augmented matrix with `cols` unknowns.
/// Free variables are set to zero; `None` if inconsistent.
pub fn solve_linear<F: Field>(
    field: &F,
    mut rows: Vec<Vec<F::Elem>>,
    cols: usize,
) -> Option<Vec<F::Elem>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for v in rows[r][c..].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *v = field.sub(v, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !field.is_zero(&row[cols])) {
        return None;
    }
    let mut sol = vec![field.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][cols].clone();
    }
    Some(sol)
}
