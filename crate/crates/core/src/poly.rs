//! Exact univariate polynomial arithmetic over the crate's fields,
//! minimal polynomials of matrices, and complete root finding in the
//! base field (Sturm-sequence isolation over the rationals, scanning or
//! gcd ladders over prime fields).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Coefficients low degree first; normalized so the leading coefficient is
/// nonzero (the zero polynomial is the empty vector).
pub(crate) type Poly = Vec<Scalar>;

pub(crate) fn trim(f: Field, mut p: Poly) -> Poly {
    while let Some(last) = p.last() {
        if f.is_zero(last) {
            p.pop();
        } else {
            break;
        }
    }
    p
}

pub(crate) fn degree(p: &[Scalar]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn eval(f: Field, p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = f.zero();
    for c in p.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub(crate) fn sub(f: Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.sub(&x, &y));
    }
    trim(f, out)
}

pub(crate) fn mul(f: Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !f.is_zero(y) {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
    }
    trim(f, out)
}

pub(crate) fn scale(f: Field, a: &[Scalar], s: &Scalar) -> Poly {
    trim(f, a.iter().map(|c| f.mul(c, s)).collect())
}

pub(crate) fn make_monic(f: Field, a: &[Scalar]) -> Poly {
    match a.last() {
        None => vec![],
        Some(lead) => scale(f, a, &f.inv(lead).expect("nonzero leading coefficient")),
    }
}

/// Division with remainder: `a = q * b + r`, `deg r < deg b`.
pub(crate) fn divmod(f: Field, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let lead_inv = f.inv(b.last().unwrap()).expect("nonzero leading coefficient");
    let mut r = trim(f, a.to_vec());
    let mut q = vec![f.zero(); r.len().saturating_sub(db)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let c = f.mul(r.last().unwrap(), &lead_inv);
        q[shift] = f.add(&q[shift], &c);
        for i in 0..=db {
            let t = f.mul(&c, &b[i]);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub(crate) fn gcd_monic(f: Field, a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divmod(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

pub(crate) fn derivative(f: Field, a: &[Scalar]) -> Poly {
    if a.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(f.mul(c, &f.from_i64(i as i64)));
    }
    trim(f, out)
}

/// Squarefree part `a / gcd(a, a')`, monic.
pub(crate) fn squarefree_part(f: Field, a: &[Scalar]) -> Poly {
    let d = derivative(f, a);
    if d.is_empty() {
        return make_monic(f, a);
    }
    let g = gcd_monic(f, a, &d);
    let (q, r) = divmod(f, a, &g);
    debug_assert!(r.is_empty());
    make_monic(f, &q)
}

/// Minimal polynomial of a square matrix: least common multiple of the
/// minimal polynomials of the standard basis vectors (Krylov sequences).
pub(crate) fn min_poly(m: &Matrix) -> Poly {
    let f = m.field;
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return vec![f.one()]; // the algebra acting on 0 has minimal polynomial 1
    }
    let mut result: Poly = vec![f.one()];
    // Accumulated span of all Krylov vectors so far.
    let mut global = Matrix::zero(f, 0, n);
    for i in 0..n {
        let mut e = Matrix::zero(f, 1, n);
        e.set(0, i, f.one());
        if global.rows() > 0 && global.row_in_span(&e) {
            continue;
        }
        // Krylov sequence from e until linear dependence.
        let mut seq: Vec<Matrix> = vec![e.clone()];
        let mut stack = e.clone();
        let local: Poly;
        loop {
            let next = seq.last().unwrap().mul(m);
            // dependence: solve c * stack = next
            if let Some(c) = stack.solve_left(&next) {
                // local minimal polynomial: x^k - sum c_i x^i
                let k = seq.len();
                let mut p = vec![f.zero(); k + 1];
                for j in 0..k {
                    p[j] = f.neg(c.at(0, j));
                }
                p[k] = f.one();
                local = trim(f, p);
                break;
            }
            stack = stack.vstack(&next);
            seq.push(next);
        }
        // result = lcm(result, local)
        let g = gcd_monic(f, &result, &local);
        let (q, _) = divmod(f, &local, &g);
        result = make_monic(f, &mul(f, &result, &q));
        global = global.vstack(&stack).row_space_basis();
        if global.rows() == n {
            break;
        }
    }
    result
}

/// All roots of a polynomial in the base field, each listed once.
pub(crate) fn roots_in_field(f: Field, p: &[Scalar]) -> Result<Vec<Scalar>> {
    let sf = squarefree_part(f, p);
    if sf.len() <= 1 {
        return Ok(vec![]);
    }
    match f {
        Field::Rational => roots_rational(&sf),
        Field::Prime { p: q } => roots_prime(f, q, &sf),
    }
}

fn to_rat(s: &Scalar) -> BigRational {
    match s {
        Scalar::Q(r) => r.clone(),
        _ => unreachable!("rational scalar expected"),
    }
}

/// Rational roots of a squarefree monic polynomial over Q, by scaling to a
/// monic integer polynomial (whose rational roots are integers) and
/// isolating real roots with Sturm sequences until each isolating interval
/// contains at most one integer candidate.
fn roots_rational(sf: &[Scalar]) -> Result<Vec<Scalar>> {
    let f = Field::Rational;
    let n = sf.len() - 1;
    // least common multiple of coefficient denominators
    let mut d = BigInt::one();
    for c in sf.iter() {
        d = d.lcm(to_rat(c).denom());
    }
    // q(y) = d^n * sf(y/d): monic integer polynomial
    let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
    for (i, c) in sf.iter().enumerate() {
        let mut v = to_rat(c);
        for _ in 0..(n - i) {
            v *= BigRational::from_integer(d.clone());
        }
        debug_assert!(v.denom().is_one());
        q.push(v);
    }
    let qp: Poly = q.iter().map(|v| Scalar::Q(v.clone())).collect();
    let qp = trim(f, qp);

    // Sturm chain
    let mut chain: Vec<Poly> = vec![qp.clone(), derivative(f, &qp)];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_empty() {
            chain.pop();
            break;
        }
        if last.len() == 1 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let (_, r) = divmod(f, prev, last);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| f.neg(c)).collect());
    }

    let sign_changes = |x: &BigRational| -> usize {
        let mut prev: Option<bool> = None;
        let mut changes = 0;
        for p in &chain {
            let v = to_rat(&eval(f, p, &Scalar::Q(x.clone())));
            if v.is_zero() {
                continue;
            }
            let s = v.is_positive();
            if let Some(ps) = prev {
                if ps != s {
                    changes += 1;
                }
            }
            prev = Some(s);
        }
        changes
    };

    // Cauchy bound: all real roots lie strictly inside (-bound, bound)
    let mut maxabs = BigRational::zero();
    for c in qp.iter().take(qp.len() - 1) {
        let a = to_rat(c).abs();
        if a > maxabs {
            maxabs = a;
        }
    }
    let bound = maxabs + BigRational::from_integer(BigInt::from(2));

    let is_root = |x: &BigRational| to_rat(&eval(f, &qp, &Scalar::Q(x.clone()))).is_zero();

    // choose a split point near the midpoint that is not a root
    let pick_split = |lo: &BigRational, hi: &BigRational| -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        let width = hi - lo;
        let mid = (lo + hi) / &two;
        let mut shift = &width / BigRational::from_integer(BigInt::from(8));
        let mut cand = mid.clone();
        loop {
            if !is_root(&cand) {
                return cand;
            }
            cand = &mid + &shift;
            if !is_root(&cand) {
                return cand;
            }
            cand = &mid - &shift;
            shift = &shift / &two;
        }
    };

    let mut int_roots: Vec<BigInt> = Vec::new();
    let one = BigRational::one();
    let mut work = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = work.pop() {
        let count = sign_changes(&lo).saturating_sub(sign_changes(&hi));
        if count == 0 {
            continue;
        }
        if &hi - &lo < one {
            // at most one integer can lie in (lo, hi]
            let cand = hi.floor().to_integer();
            let cr = BigRational::from_integer(cand.clone());
            if cr > lo && cr <= hi && is_root(&cr) {
                int_roots.push(cand);
            }
            continue;
        }
        let split = pick_split(&lo, &hi);
        work.push((lo, split.clone()));
        work.push((split, hi));
    }

    int_roots.sort();
    int_roots.dedup();
    let mut out = Vec::new();
    for y in int_roots {
        let x = BigRational::new(y, d.clone());
        let xs = Scalar::Q(x);
        debug_assert!(f.is_zero(&eval(f, sf, &xs)));
        out.push(xs);
    }
    Ok(out)
}

/// Roots over F_p: direct scan for small p, otherwise a gcd ladder with
/// x^p - x and deterministic shift-based equal-degree splitting.
fn roots_prime(f: Field, p: u64, sf: &[Scalar]) -> Result<Vec<Scalar>> {
    if p <= 1 << 16 {
        let mut out = Vec::new();
        for t in 0..p {
            let x = Scalar::Fp(t);
            if f.is_zero(&eval(f, sf, &x)) {
                out.push(x);
            }
        }
        return Ok(out);
    }
    // product of (x - r) over all roots r: gcd(sf, x^p - x)
    let xp = poly_powmod(f, &[f.zero(), f.one()], p, sf);
    let lin = sub(f, &xp, &[f.zero(), f.one()]);
    let g = gcd_monic(f, sf, &lin);
    let mut roots = Vec::new();
    split_all_roots(f, p, &g, &mut roots, 0)?;
    let mut vals: Vec<u64> = roots
        .iter()
        .map(|s| match s {
            Scalar::Fp(v) => *v,
            _ => unreachable!(),
        })
        .collect();
    vals.sort_unstable();
    vals.dedup();
    Ok(vals.into_iter().map(Scalar::Fp).collect())
}

fn poly_powmod(f: Field, base: &[Scalar], mut e: u64, m: &[Scalar]) -> Poly {
    let mut acc: Poly = vec![f.one()];
    let mut b = divmod(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divmod(f, &mul(f, &acc, &b), m).1;
        }
        b = divmod(f, &mul(f, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Split a product of distinct linear factors into roots, by gcd with
/// (x+a)^((p-1)/2) - 1 for increasing shifts a.
fn split_all_roots(f: Field, p: u64, g: &[Scalar], out: &mut Vec<Scalar>, depth: usize) -> Result<()> {
    match degree(g) {
        None | Some(0) => Ok(()),
        Some(1) => {
            // monic x + c: root is -c
            out.push(f.neg(&g[0]));
            Ok(())
        }
        Some(_) => {
            if depth > 64 {
                return Err(CoreError::BoundExceeded {
                    what: "root splitting recursion".into(),
                    bound: 64,
                });
            }
            for a in 0..4096u64 {
                let shifted = vec![Scalar::Fp(a % p), f.one()];
                let pw = poly_powmod(f, &shifted, (p - 1) / 2, g);
                let h = gcd_monic(f, &sub(f, &pw, &[f.one()]), g);
                let d = degree(&h).unwrap_or(0);
                if d > 0 && d < degree(g).unwrap() {
                    let (q, r) = divmod(f, g, &h);
                    debug_assert!(r.is_empty());
                    split_all_roots(f, p, &h, out, depth + 1)?;
                    split_all_roots(f, p, &make_monic(f, &q), out, depth + 1)?;
                    return Ok(());
                }
            }
            Err(CoreError::BoundExceeded {
                what: "equal-degree splitting shifts".into(),
                bound: 4096,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(n: i64, d: i64) -> Scalar {
        Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn divmod_reconstructs_the_dividend() {
        let f = Field::Rational;
        // a = x^3 + 2x + 1, b = x^2 - 1
        let a = vec![qs(1, 1), qs(2, 1), qs(0, 1), qs(1, 1)];
        let b = vec![qs(-1, 1), qs(0, 1), qs(1, 1)];
        let (q, r) = divmod(f, &a, &b);
        let diff = sub(f, &a, &mul(f, &q, &b));
        assert_eq!(trim(f, diff), trim(f, r.clone()));
        assert!(degree(&r).unwrap_or(0) < degree(&b).unwrap());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = Field::Rational;
        // (x-1)(x-2) and (x-1)(x+3) share (x-1)
        let a = mul(f, &[qs(-1, 1), qs(1, 1)], &[qs(-2, 1), qs(1, 1)]);
        let b = mul(f, &[qs(-1, 1), qs(1, 1)], &[qs(3, 1), qs(1, 1)]);
        let g = gcd_monic(f, &a, &b);
        assert_eq!(g, vec![qs(-1, 1), qs(1, 1)]);
    }

    #[test]
    fn rational_roots_of_integer_and_fractional_polys() {
        let f = Field::Rational;
        // (x-2)(x+3)(x^2+1): roots 2, -3
        let p = mul(
            f,
            &mul(f, &[qs(-2, 1), qs(1, 1)], &[qs(3, 1), qs(1, 1)]),
            &[qs(1, 1), qs(0, 1), qs(1, 1)],
        );
        let mut roots = roots_in_field(f, &p).unwrap();
        roots.sort_by(|a, b| {
            to_rat(a).partial_cmp(&to_rat(b)).unwrap()
        });
        assert_eq!(roots, vec![qs(-3, 1), qs(2, 1)]);

        // (x - 1/2)(x - 1/3): fractional roots
        let p2 = mul(f, &[qs(-1, 2), qs(1, 1)], &[qs(-1, 3), qs(1, 1)]);
        let mut roots2 = roots_in_field(f, &p2).unwrap();
        roots2.sort_by(|a, b| to_rat(a).partial_cmp(&to_rat(b)).unwrap());
        assert_eq!(roots2, vec![qs(1, 3), qs(1, 2)]);
    }

    #[test]
    fn no_rational_roots_for_irreducibles() {
        let f = Field::Rational;
        // x^2 - 2 and x^2 + 1
        assert!(roots_in_field(f, &[qs(-2, 1), qs(0, 1), qs(1, 1)])
            .unwrap()
            .is_empty());
        assert!(roots_in_field(f, &[qs(1, 1), qs(0, 1), qs(1, 1)])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn repeated_roots_are_found_once() {
        let f = Field::Rational;
        // (x-5)^3
        let lin = vec![qs(-5, 1), qs(1, 1)];
        let p = mul(f, &mul(f, &lin, &lin), &lin);
        assert_eq!(roots_in_field(f, &p).unwrap(), vec![qs(5, 1)]);
    }

    #[test]
    fn roots_mod_small_prime_by_scan() {
        let f = Field::Prime { p: 7 };
        // x^2 - 2 mod 7: 3^2 = 2, 4^2 = 2
        let p = vec![f.from_i64(-2), f.zero(), f.one()];
        let roots = roots_in_field(f, &p).unwrap();
        assert_eq!(roots, vec![Scalar::Fp(3), Scalar::Fp(4)]);
    }

    #[test]
    fn roots_mod_large_prime_by_gcd_ladder() {
        let p = 1_000_003u64; // prime above the scan threshold
        let f = Field::Prime { p };
        // (x - 17)(x - 23456)
        let a = vec![f.from_i64(-17), f.one()];
        let b = vec![f.from_i64(-23456), f.one()];
        let poly = mul(f, &a, &b);
        let mut roots = roots_in_field(f, &poly).unwrap();
        roots.sort_by_key(|s| match s {
            Scalar::Fp(v) => *v,
            _ => unreachable!(),
        });
        assert_eq!(roots, vec![Scalar::Fp(17), Scalar::Fp(23456)]);
    }

    #[test]
    fn min_poly_of_small_matrices() {
        let f = Field::Rational;
        // diagonal (1, 1): min poly x - 1
        let id = Matrix::identity(f, 2);
        assert_eq!(min_poly(&id), vec![qs(-1, 1), qs(1, 1)]);
        // nilpotent Jordan block: x^2
        let n = Matrix::from_i64(f, &[&[0, 1], &[0, 0]]);
        assert_eq!(min_poly(&n), vec![qs(0, 1), qs(0, 1), qs(1, 1)]);
        // diag(2, 3): (x-2)(x-3)
        let d = Matrix::from_i64(f, &[&[2, 0], &[0, 3]]);
        let expect = mul(f, &[qs(-2, 1), qs(1, 1)], &[qs(-3, 1), qs(1, 1)]);
        assert_eq!(min_poly(&d), expect);
    }
}
