// Dense univariate polynomials over Q, lowest degree first.

use num_rational::BigRational;
use num_traits::{One, Zero};

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = degree(den).expect("polynomial division by zero");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let Some(nd) = degree(&rem) else {
        return (vec![BigRational::zero()], rem);
    };
    if nd < dd {
        return (vec![BigRational::zero()], rem);
    }
    let mut q = vec![BigRational::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[k + j] -= t;
        }
        q[k] = c;
    }
    trim(&mut rem);
    (q, rem)
}

fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `modp` (extended Euclid).
pub(super) fn inverse_mod(a: &[BigRational], modp: &[BigRational]) -> Vec<BigRational> {
    // invariant: r0 = s0·a (mod modp), r1 = s1·a (mod modp)
    let mut r0 = modp.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let c = r1[0].clone();
    assert!(!c.is_zero(), "element not invertible modulo an irreducible");
    let (_, s) = divrem(&s1, modp);
    s.into_iter().map(|x| x / &c).collect()
}
