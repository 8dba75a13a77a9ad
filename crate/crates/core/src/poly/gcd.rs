//! Multivariate gcd by recursion on the number of variables.
//!
//! A polynomial in variables `0..nv` is viewed as univariate in variable
//! `nv - 1` with coefficients in the ring of polynomials in `0..nv - 1`.
//! The gcd is `gcd(contents) * pp(prs_gcd(pp(a), pp(b)))`, where the
//! univariate gcd of primitive parts runs the subresultant remainder
//! sequence. All polynomials keep the full variable list; "lower" rings are
//! just polynomials that do not mention the higher variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CoeffRing, Polynomial};

type Univariate = Vec<Polynomial>;

pub(super) fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    gcd_rec(a, b, a.nvars())
}

fn gcd_rec(a: &Polynomial, b: &Polynomial, nv: usize) -> Polynomial {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    if nv == 0 {
        return constant_gcd(a, b);
    }
    let main = nv - 1;
    if a.degree_in(main) == 0 && b.degree_in(main) == 0 {
        return gcd_rec(a, b, nv - 1);
    }

    let ua = a.split_by(main);
    let ub = b.split_by(main);
    let ca = content(&ua, nv - 1);
    let cb = content(&ub, nv - 1);
    let d = gcd_rec(&ca, &cb, nv - 1);
    let pa = div_coeffs(&ua, &ca);
    let pb = div_coeffs(&ub, &cb);

    let g = if pa.len() == 1 || pb.len() == 1 || coprime_by_evaluation(&pa, &pb) {
        vec![Polynomial::one(a.coeffs, a.vars.clone())]
    } else {
        let g = subresultant_gcd(pa, pb);
        let cg = content(&g, nv - 1);
        div_coeffs(&g, &cg)
    };
    (&d * &Polynomial::join_by(&g, main, a)).normalize()
}

/// Sound coprimality test for primitive `pa`, `pb`. At a point where
/// neither leading coefficient vanishes, the image of the true gcd keeps
/// its degree and divides both images, so a constant gcd of the images
/// means the gcd has degree 0 in the main variable and, dividing primitive
/// polynomials, is a unit. Inconclusive points just return `false`.
fn coprime_by_evaluation(pa: &Univariate, pb: &Univariate) -> bool {
    let nvars = pa[0].nvars();
    for attempt in 0..4i64 {
        let point: Vec<BigRational> = (0..nvars as i64)
            .map(|i| BigRational::from_integer(BigInt::from(2 + 3 * i + 7 * attempt)))
            .collect();
        let ia: Vec<BigRational> = pa.iter().map(|c| c.eval_at(&point)).collect();
        let ib: Vec<BigRational> = pb.iter().map(|c| c.eval_at(&point)).collect();
        if ia.last().is_some_and(Zero::is_zero) || ib.last().is_some_and(Zero::is_zero) {
            continue;
        }
        return rational_gcd_degree(ia, ib) == 0;
    }
    false
}

/// Degree of the gcd of two nonzero dense univariate polynomials over ℚ.
fn rational_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = a.last().unwrap() / b.last().unwrap();
            for (i, bc) in b.iter().enumerate() {
                a[i + shift] -= &f * bc;
            }
            a.pop();
            while a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
            if a.is_empty() {
                return b.len() - 1;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

fn constant_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    match a.coeffs {
        CoeffRing::Rat => Polynomial::one(a.coeffs, a.vars.clone()),
        CoeffRing::Int => {
            let x: BigInt = a.constant_value().unwrap().to_integer();
            let y: BigInt = b.constant_value().unwrap().to_integer();
            Polynomial::from_int(a.coeffs, a.vars.clone(), x.gcd(&y))
        }
    }
}

/// gcd of the (nonzero) coefficients, in the ring of variables `0..nv`.
fn content(u: &Univariate, nv: usize) -> Polynomial {
    let mut iter = u.iter().filter(|c| !c.is_zero());
    let first = iter.next().expect("content of the zero polynomial").normalize();
    iter.fold(first, |acc, c| {
        if acc.is_one() {
            acc
        } else {
            gcd_rec(&acc, c, nv)
        }
    })
}

fn div_coeffs(u: &Univariate, by: &Polynomial) -> Univariate {
    if by.is_one() {
        return u.clone();
    }
    u.iter()
        .map(|c| {
            c.exact_div(by)
                .expect("nonzero divisor")
                .expect("content divides every coefficient")
        })
        .collect()
}

fn mul_coeffs(u: &Univariate, by: &Polynomial) -> Univariate {
    u.iter().map(|c| c * by).collect()
}

fn deg(u: &Univariate) -> usize {
    u.len() - 1
}

fn lc(u: &Univariate) -> &Polynomial {
    u.last().expect("leading coefficient of the zero polynomial")
}

fn trim(u: &mut Univariate) {
    while u.last().is_some_and(Polynomial::is_zero) {
        u.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, with `deg a >= deg b`.
fn pseudo_remainder(a: &Univariate, b: &Univariate) -> Univariate {
    let db = deg(b);
    let lcb = lc(b).clone();
    let mut r = a.clone();
    let mut e = deg(a) - db + 1;
    while !r.is_empty() && deg(&r) >= db {
        let shift = deg(&r) - db;
        let lcr = lc(&r).clone();
        r = mul_coeffs(&r, &lcb);
        for (i, bc) in b.iter().enumerate() {
            let t = &r[i + shift] - &(&lcr * bc);
            r[i + shift] = t;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        r = mul_coeffs(&r, &lcb.pow(e as u32));
    }
    r
}

/// gcd of two primitive univariate polynomials of positive degree, up to a
/// factor from the coefficient ring.
fn subresultant_gcd(mut a: Univariate, mut b: Univariate) -> Univariate {
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let one = Polynomial::one(a[0].coeffs, a[0].vars.clone());
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return b;
        }
        if deg(&r) == 0 {
            return vec![one];
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = div_coeffs(&r, &divisor);
        g = lc(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("nonzero")
                .expect("subresultant h update is exact")
        };
    }
}
