use std::borrow::Cow;
use std::cmp::Ordering;

use super::{Outcome, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicComplex, Round};
use crate::polynomial::{taylor_shift, taylor_shift_complex, DyadicPolynomial, IntPolynomial};
use crate::roots::{CertifiedRoot, RootSet};
use crate::subdivide::Square;

/// Square-free part of a nonzero polynomial.
fn square_free_part(g: &IntPolynomial) -> IntPolynomial {
    let h = g.gcd(&g.derivative());
    g.exact_div(&h).unwrap_or_else(|| g.clone())
}

/// True when `g` has a real root in the closed interval `[a, b]`.
fn has_root_in(g: &IntPolynomial, a: &Dyadic, b: &Dyadic) -> bool {
    if g.deg() == 0 {
        return false;
    }
    let g = square_free_part(g);
    match crate::polynomial::sturm_chain(&g) {
        Ok(chain) => chain.count_roots_closed(a, b) > 0,
        Err(_) => false,
    }
}

/// True when the disk's root provably lies on the line through the chord
/// `{center_other ± h}` where `re_part`/`im_part` are p restricted to the line.
fn chord_certificate(re_part: DyadicPolynomial, im_part: DyadicPolynomial, chord_center: &Dyadic, h_sq: &Dyadic) -> bool {
    if !h_sq.is_positive() {
        return false;
    }
    let a = re_part.clear_denominators();
    let b = im_part.clear_denominators();
    let g = a.gcd(&b);
    if g.is_zero() || g.deg() == 0 {
        return false;
    }
    let h = h_sq.sqrt_round(64, Round::Down);
    has_root_in(&g, &(chord_center - &h), &(chord_center + &h))
}

/// Does the root in `root`'s disk have real part exactly `v`?
fn on_vertical_line(p: &IntPolynomial, root: &CertifiedRoot, v: &Dyadic) -> bool {
    let q = taylor_shift(p, v).coeffs;
    let mut a = vec![Dyadic::zero(); q.len()];
    let mut b = vec![Dyadic::zero(); q.len()];
    for (k, c) in q.iter().enumerate() {
        match k % 4 {
            0 => a[k] = c.clone(),
            1 => b[k] = c.clone(),
            2 => a[k] = -c,
            _ => b[k] = -c,
        }
    }
    let h_sq = &root.radius.square() - &(v - &root.center.re).square();
    chord_certificate(DyadicPolynomial::new(a), DyadicPolynomial::new(b), &root.center.im, &h_sq)
}

/// Does the root in `root`'s disk have imaginary part exactly `w`?
fn on_horizontal_line(p: &IntPolynomial, root: &CertifiedRoot, w: &Dyadic) -> bool {
    let q = taylor_shift_complex(p, &DyadicComplex::new(Dyadic::zero(), w.clone()));
    let a = DyadicPolynomial::new(q.iter().map(|c| c.re.clone()).collect());
    let b = DyadicPolynomial::new(q.iter().map(|c| c.im.clone()).collect());
    let h_sq = &root.radius.square() - &(w - &root.center.im).square();
    chord_certificate(a, b, &root.center.re, &h_sq)
}

/// Compares a root coordinate with `v`. The root lies strictly inside its
/// disk, so touching the boundary still decides.
fn coord_cmp(c: &Dyadic, r: &Dyadic, v: &Dyadic, on_line: impl FnOnce() -> bool) -> Option<Ordering> {
    if r.is_zero() {
        return Some(c.cmp(v));
    }
    if &(c + r) <= v {
        return Some(Ordering::Less);
    }
    if &(c - r) >= v {
        return Some(Ordering::Greater);
    }
    if on_line() { Some(Ordering::Equal) } else { None }
}

/// Whether the certified root lies in the half-open square; `None` if undecided.
fn root_in_square(p: &IntPolynomial, root: &CertifiedRoot, s: &Square) -> Option<bool> {
    let (cr, ci, r) = (&root.center.re, &root.center.im, &root.radius);
    // Side k: 0 is x0 (need >=), 1 is x1 (need <), 2 is y0 (need >), 3 is y1 (need <=).
    let accept = |k: usize, o: Ordering| match k {
        0 => o != Ordering::Less,
        1 => o == Ordering::Less,
        2 => o == Ordering::Greater,
        _ => o != Ordering::Greater,
    };
    let line = |k: usize| [&s.x0, &s.x1, &s.y0, &s.y1][k];
    let cmp = |k: usize, certify: bool| -> Option<Ordering> {
        let v = line(k);
        if k < 2 {
            coord_cmp(cr, r, v, || certify && on_vertical_line(p, root, v))
        } else if root.is_real {
            Some(Dyadic::zero().cmp(v))
        } else {
            coord_cmp(ci, r, v, || certify && on_horizontal_line(p, root, v))
        }
    };
    let mut open = Vec::new();
    for k in 0..4 {
        match cmp(k, false) {
            Some(o) if !accept(k, o) => return Some(false),
            Some(_) => {}
            None => open.push(k),
        }
    }
    let mut undecided = false;
    for k in open {
        match cmp(k, true) {
            Some(o) if !accept(k, o) => return Some(false),
            Some(_) => {}
            None => undecided = true,
        }
    }
    if undecided { None } else { Some(true) }
}

/// Exact number of roots in the half-open square, refining enclosures as needed.
pub fn count_roots_in_square(rs: &RootSet, s: &Square) -> Result<usize> {
    let mut cur: Cow<RootSet> = Cow::Borrowed(rs);
    let mut pending: Vec<usize> = (0..rs.roots.len()).collect();
    let mut count = 0;
    loop {
        let mut still = Vec::new();
        for &i in &pending {
            match root_in_square(&cur.poly, &cur.roots[i], s) {
                Some(true) => count += 1,
                Some(false) => {}
                None => still.push(i),
            }
        }
        if still.is_empty() {
            return Ok(count);
        }
        pending = still;
        cur = Cow::Owned(cur.refined().map_err(|_| Error::resource("root on square boundary undecidable at maximum precision"))?);
    }
}

/// Root-count predicate on a half-open square.
pub fn b_csturm(rs: &RootSet, s: &Square) -> Result<Verdict> {
    let n = count_roots_in_square(rs, s)?;
    let outcome = match n {
        0 => Outcome::Exclude,
        1 => Outcome::Include,
        _ => Outcome::Split,
    };
    Ok(Verdict { outcome, detail: format!("csturm:{n}") })
}

/// Decides `sum_k sqrt(terms[k]) < sqrt(rhs)` for nonnegative dyadics, escalating
/// precision; undecided comparisons at the cap count as false.
fn sum_sqrt_lt(terms: &[Dyadic], rhs: &Dyadic) -> bool {
    if terms.iter().all(|t| t.is_zero()) {
        return rhs.is_positive();
    }
    let mut prec = 64;
    while prec <= 4096 {
        let up: Dyadic = terms.iter().fold(Dyadic::zero(), |s, t| &s + &t.sqrt_round(prec, Round::Up));
        let dn: Dyadic = terms.iter().fold(Dyadic::zero(), |s, t| &s + &t.sqrt_round(prec, Round::Down));
        if up < rhs.sqrt_round(prec, Round::Down) {
            return true;
        }
        if dn >= rhs.sqrt_round(prec, Round::Up) {
            return false;
        }
        prec *= 2;
    }
    false
}

/// Outcomes of the three disk conditions used by the complex predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CevalConditions {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

/// Evaluates the conditions on the disk centered at `m` with `radius_sq = (diam/2)^2`.
pub fn ceval_conditions(p: &IntPolynomial, p_prime: &IntPolynomial, m: &DyadicComplex, radius_sq: &Dyadic) -> CevalConditions {
    let n: Vec<Dyadic> = taylor_shift_complex(p, m).iter().map(|c| c.norm_sq()).collect();
    let mut rk = Dyadic::one();
    let terms_a: Vec<Dyadic> = n
        .iter()
        .skip(1)
        .map(|nk| {
            rk = &rk * radius_sq;
            nk * &rk
        })
        .collect();
    let a = !n.is_empty() && sum_sqrt_lt(&terms_a, &n[0]);

    let nd: Vec<Dyadic> = taylor_shift_complex(p_prime, m).iter().map(|c| c.norm_sq()).collect();
    let lhs = |scale: i64, factor: i64| -> Vec<Dyadic> {
        let base = radius_sq.mul_pow2(scale);
        let mut bk = Dyadic::one();
        nd.iter()
            .skip(1)
            .map(|nk| {
                bk = &bk * &base;
                &(nk * &bk) * &Dyadic::from(factor)
            })
            .collect()
    };
    let (b, c) = if nd.is_empty() || nd[0].is_zero() {
        (false, false)
    } else {
        // (2 diam)^2 = 16 R and (4 diam)^2 = 64 R; the 1/6 and 1/sqrt2 thresholds
        // move to the left as factors 36 and 2 under the square roots.
        (sum_sqrt_lt(&lhs(4, 36), &nd[0]), sum_sqrt_lt(&lhs(6, 2), &nd[0]))
    };
    CevalConditions { a, b, c }
}

/// Complex exclusion/inclusion predicate; candidates are resolved by exact root counting.
pub fn b_sqfree_ceval(p: &IntPolynomial, p_prime: &IntPolynomial, s: &Square, rs: &RootSet) -> Result<Verdict> {
    let w = s.width();
    let cond = ceval_conditions(p, p_prime, &s.mid(), &w.square().half());
    if cond.a {
        return Ok(Verdict { outcome: Outcome::Exclude, detail: "ceval:a".into() });
    }
    if cond.b && cond.c {
        let n = count_roots_in_square(rs, s)?;
        let outcome = match n {
            0 => Outcome::Exclude,
            1 => Outcome::Include,
            _ => Outcome::Split,
        };
        return Ok(Verdict { outcome, detail: format!("ceval:bc:{n}") });
    }
    Ok(Verdict { outcome: Outcome::Split, detail: "ceval:split".into() })
}
