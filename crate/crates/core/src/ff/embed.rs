//! A compatible system of embeddings `F_{p^d} → F_{p^K}` for `d | K`.
//!
//! Each field carries a primitive element `g_K`, the lexicographically least primitive
//! element whose norm down to every maximal subfield `F_{p^d}` is a conjugate of `g_d`.
//! The embedding sends `g_d` to `g_K^((p^K−1)/(p^d−1))`, so embeddings compose.

use num_bigint::BigUint;

use super::{make_field, poly_roots, Field, FFElem};
use crate::arith::factorize;
use crate::error::{Error, Result};

/// Minimal polynomial over `F_p` of `a`, as prime-field coefficients (constant first, monic).
fn prime_minpoly(a: &FFElem) -> Vec<u64> {
    let field = a.field().clone();
    let d = a.subfield_degree();
    let mut poly = vec![field.one()];
    let mut conj = a.clone();
    for _ in 0..d {
        let mut next = vec![field.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add_unchecked(c);
            next[i] = next[i].sub_unchecked(&c.mul_unchecked(&conj));
        }
        poly = next;
        conj = conj.frobenius(1);
    }
    poly.iter().map(|c| c.as_prime().expect("minimal polynomial lies over F_p")).collect()
}

fn eval_prime_poly(coeffs: &[u64], x: &FFElem) -> FFElem {
    let field = x.field().clone();
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, &c| acc.mul_unchecked(x).add_unchecked(&field.scalar(c as i64)))
}

fn norm_exponent(p: u64, big: usize, small: usize) -> BigUint {
    let p = BigUint::from(p);
    (p.pow(big as u32) - 1u32) / (p.pow(small as u32) - 1u32)
}

/// The distinguished primitive element of the field.
pub fn generator(field: &Field) -> FFElem {
    let coords = field.generator_cell().get_or_init(|| find_generator(field));
    FFElem::from_coords(field.clone(), coords.clone())
}

fn find_generator(field: &Field) -> Vec<u64> {
    let p = field.p();
    let k = field.degree();
    let constraints: Vec<(BigUint, Vec<u64>)> = factorize(k as u128)
        .into_iter()
        .map(|(l, _)| {
            let d = k / l as usize;
            let sub = make_field(p, d).expect("subfield of a valid field");
            (norm_exponent(p, k, d), prime_minpoly(&generator(&sub)))
        })
        .collect();
    field
        .elements()
        .skip(1)
        .find(|g| {
            g.is_primitive()
                && constraints
                    .iter()
                    .all(|(e, m)| eval_prime_poly(m, &g.pow_big(e)).is_zero())
        })
        .expect("a norm-compatible primitive element exists")
        .coords()
        .to_vec()
}

/// Image of the power-basis generator of `F_{p^d}` inside `target`.
fn basis_image(d: usize, target: &Field) -> Result<Vec<u64>> {
    if let Some(c) = target.cached_embedding(d) {
        return Ok(c);
    }
    let p = target.p();
    let sub = make_field(p, d)?;
    let g_sub = generator(&sub);
    let image_of_g = generator(target).pow_big(&norm_exponent(p, target.degree(), d));
    let f_p = make_field(p, 1)?;
    let mut modulus: Vec<FFElem> = sub.modulus().iter().map(|&c| f_p.scalar(c as i64)).collect();
    modulus.push(f_p.one());
    let y = poly_roots(&modulus, target)?
        .into_iter()
        .find(|y| eval_prime_poly(g_sub.coords(), y) == image_of_g)
        .expect("the generator image is a conjugate of the subfield generator");
    let coords = y.coords().to_vec();
    target.store_embedding(d, coords.clone());
    Ok(coords)
}

/// Embeds `a ∈ F_{p^d}` into `F_{p^K}` for `d | K`.
pub fn embed(a: &FFElem, target: &Field) -> Result<FFElem> {
    let src = a.field();
    if src.p() != target.p() {
        return Err(Error::PrimeMismatch(src.p(), target.p()));
    }
    let (d, k) = (src.degree(), target.degree());
    if d == k {
        return Ok(a.clone());
    }
    if k % d != 0 {
        return Err(Error::NotASubfield { sub: d, sup: k });
    }
    if d == 1 {
        return Ok(target.scalar(a.coords()[0] as i64));
    }
    let y = FFElem::from_coords(target.clone(), basis_image(d, target)?);
    Ok(eval_prime_poly(a.coords(), &y))
}

/// Rewrites an element of a subfield `F_{p^d} ⊂ F_{p^K}` in the field `F_{p^d}` itself.
pub fn restrict(a: &FFElem, d: usize) -> Result<FFElem> {
    let k = a.field().degree();
    if d == k {
        return Ok(a.clone());
    }
    if k % d != 0 || a.subfield_degree() > d || d % a.subfield_degree() != 0 {
        return Err(Error::NotASubfield { sub: d, sup: k });
    }
    let sub = make_field(a.p(), d)?;
    // the embedding is F_p-linear: solve in the image basis y^0..y^(d−1)
    let images: Vec<FFElem> = (0..d)
        .map(|i| {
            let mut c = vec![0; d];
            c[i] = 1;
            embed(&FFElem::from_coords(sub.clone(), c), a.field())
        })
        .collect::<Result<_>>()?;
    solve_linear(&images, a).map(|c| FFElem::from_coords(sub, c))
}

/// Coordinates `c` with `Σ c_i b_i = target` over `F_p`, by Gaussian elimination.
fn solve_linear(basis: &[FFElem], target: &FFElem) -> Result<Vec<u64>> {
    let p = target.p();
    let n = basis.len();
    let k = target.field().degree();
    // rows: equations per coordinate; columns: unknowns + rhs
    let mut m: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            let mut row: Vec<u64> = basis.iter().map(|b| b.coords()[r]).collect();
            row.push(target.coords()[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..k).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, piv);
        let inv = crate::arith::inv_mod(m[row][col], p).unwrap();
        for v in m[row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..k {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..=n {
                    m[r][c] = (m[r][c] + p * p - f * m[row][c]) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| r[n] != 0) {
        return Err(Error::NotASubfield { sub: n, sup: k });
    }
    let mut out = vec![0; n];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = m[r][n];
    }
    Ok(out)
}
