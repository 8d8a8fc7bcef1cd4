use std::collections::BTreeMap;

use super::spec::{ParamValue, PresetSpec};
use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use crate::free_model::{free_level3, Variant};
use crate::zq::Modulus;

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidGroup(format!("defining relation failed: {what}")))
    }
}

/// `Z/n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("cyclic group needs n >= 1"));
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    let names = gens.iter().map(|_| "g".to_string()).collect();
    FiniteGroup::from_indexed_law(n, |a, b| (a + b) % n, gens, names, DEFAULT_ORDER_CAP)
}

/// `(Z/q)^d` with the standard basis as generators.
pub fn elementary_abelian(q: usize, d: usize) -> Result<FiniteGroup> {
    if q < 2 {
        return Err(invalid("elementary_abelian needs q >= 2"));
    }
    let n = q
        .checked_pow(d as u32)
        .filter(|&n| n <= DEFAULT_ORDER_CAP)
        .ok_or_else(|| invalid(format!("(Z/{q})^{d} exceeds the order cap")))?;
    let digits = |mut x: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let r = x % q;
                x /= q;
                r
            })
            .collect()
    };
    let law = |a: usize, b: usize| -> usize {
        let (da, db) = (digits(a), digits(b));
        da.iter().zip(&db).rev().fold(0, |acc, (x, y)| acc * q + (x + y) % q)
    };
    let gens: Vec<usize> = (0..d).map(|i| q.pow(i as u32)).collect();
    let names = (1..=d).map(|i| format!("e{i}")).collect();
    FiniteGroup::from_indexed_law(n, law, gens, names, DEFAULT_ORDER_CAP)
}

/// The Heisenberg group of order `p^3` (exponent `p`) for odd `p`, with
/// generators `r`, `s` and `[r, s]` central of order `p`.
pub fn heisenberg(p: u32) -> Result<FiniteGroup> {
    if !is_prime(p) || p == 2 {
        return Err(invalid(format!("heisenberg({p}) needs an odd prime")));
    }
    let p = p as usize;
    let enc = |a: usize, b: usize, c: usize| a + p * b + p * p * c;
    let dec = |x: usize| (x % p, (x / p) % p, x / (p * p));
    let law = |x: usize, y: usize| {
        let (a, b, c) = dec(x);
        let (a2, b2, c2) = dec(y);
        enc((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p)
    };
    let g = FiniteGroup::from_indexed_law(p * p * p, law, vec![1, p], vec!["r".into(), "s".into()], DEFAULT_ORDER_CAP)?;
    let (r, s) = (1, p);
    let t = g.commutator(r, s);
    ensure(t == enc(0, 0, 1), "[r,s] = t")?;
    ensure(g.is_central(t) && g.element_order(t) == p, "t central of order p")?;
    ensure(g.exponent() == p, "exponent p")?;
    Ok(g)
}

/// `M_{p^3} = <r, s | r^{p^2} = s^p = 1, r^p = [r, s]>` for odd `p`.
pub fn modular(p: u32) -> Result<FiniteGroup> {
    if !is_prime(p) || p == 2 {
        return Err(invalid(format!("modular({p}) needs an odd prime")));
    }
    let p = p as usize;
    let p2 = p * p;
    // Elements r^i s^j; s^j r^k = r^{k (1-p)^j} s^j.
    let twist: Vec<usize> = (0..p)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = (*acc * (p2 + 1 - p)) % p2;
            Some(cur)
        })
        .collect();
    let law = |x: usize, y: usize| {
        let (i, j) = (x % p2, x / p2);
        let (k, l) = (y % p2, y / p2);
        (i + k * twist[j]) % p2 + p2 * ((j + l) % p)
    };
    let g = FiniteGroup::from_indexed_law(p2 * p, law, vec![1, p2], vec!["r".into(), "s".into()], DEFAULT_ORDER_CAP)?;
    let (r, s) = (1, p2);
    ensure(g.element_order(r) == p2, "r^{p^2} = 1")?;
    ensure(g.element_order(s) == p, "s^p = 1")?;
    ensure(g.commutator(r, s) == g.pow(r, p as u64), "r^p = [r,s]")?;
    Ok(g)
}

/// The dihedral group of order 8, `r^4 = s^2 = 1`, `s r s = r^-1`.
pub fn dihedral4() -> Result<FiniteGroup> {
    let law = |x: usize, y: usize| {
        let (i, j) = (x % 4, x / 4);
        let (k, l) = (y % 4, y / 4);
        let k = if j == 1 { (4 - k) % 4 } else { k };
        (i + k) % 4 + 4 * ((j + l) % 2)
    };
    let g = FiniteGroup::from_indexed_law(8, law, vec![1, 4], vec!["r".into(), "s".into()], DEFAULT_ORDER_CAP)?;
    ensure(g.element_order(1) == 4 && g.element_order(4) == 2, "r^4 = s^2 = 1")?;
    ensure(g.mul(g.mul(4, 1), 4) == g.inv(1), "s r s = r^-1")?;
    Ok(g)
}

/// The quaternion group, `r = i`, `s = j`.
pub fn quaternion8() -> Result<FiniteGroup> {
    let law = |x: usize, y: usize| {
        let (a, b) = (x % 4, x / 4);
        let (c, d) = (y % 4, y / 4);
        let c = if b == 1 { (4 - c) % 4 } else { c };
        let mut e = a + c;
        let mut f = b + d;
        if f == 2 {
            e += 2;
            f = 0;
        }
        e % 4 + 4 * f
    };
    let g = FiniteGroup::from_indexed_law(8, law, vec![1, 4], vec!["r".into(), "s".into()], DEFAULT_ORDER_CAP)?;
    ensure(g.element_order(1) == 4 && g.pow(4, 2) == g.pow(1, 2), "s^2 = r^2 of order 2")?;
    ensure(g.conjugate(1, 4) == g.inv(1), "s^-1 r s = r^-1")?;
    Ok(g)
}

/// `G x H` with generators `(g, 1)` then `(1, h)`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na
        .checked_mul(nb)
        .filter(|&n| n <= DEFAULT_ORDER_CAP)
        .ok_or_else(|| invalid("direct product exceeds the order cap"))?;
    let law = |x: usize, y: usize| a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
    let mut gens: Vec<usize> = a.generators().to_vec();
    gens.extend(b.generators().iter().map(|&h| h * na));
    let mut names: Vec<String> = a.generator_names().iter().map(|s| format!("{s}.1")).collect();
    names.extend(b.generator_names().iter().map(|s| format!("{s}.2")));
    FiniteGroup::from_indexed_law(n, law, gens, names, DEFAULT_ORDER_CAP)
}

fn int_param(params: &BTreeMap<String, ParamValue>, key: &str) -> Result<i64> {
    match params.get(key) {
        Some(ParamValue::Int(v)) => Ok(*v),
        Some(ParamValue::Text(t)) => t.trim().parse().map_err(|_| invalid(format!("parameter {key}={t} is not an integer"))),
        Some(_) => Err(invalid(format!("parameter {key} must be an integer"))),
        None => Err(invalid(format!("missing parameter {key}"))),
    }
}

fn usize_param(params: &BTreeMap<String, ParamValue>, key: &str) -> Result<usize> {
    let v = int_param(params, key)?;
    usize::try_from(v).map_err(|_| invalid(format!("parameter {key} must be non-negative")))
}

/// Builds a named preset. Names: `cyclic(n)`, `elementary_abelian(q, d)`,
/// `heisenberg(p)`, `modular(p)`, `dihedral4`, `quaternion8`,
/// `direct_product(factors)`, `sharp(d, q)`, `flat(d, q)`.
pub fn preset(name: &str, params: &BTreeMap<String, ParamValue>) -> Result<FiniteGroup> {
    match name {
        "cyclic" => cyclic(usize_param(params, "n")?),
        "elementary_abelian" => elementary_abelian(usize_param(params, "q")?, usize_param(params, "d")?),
        "heisenberg" => heisenberg(usize_param(params, "p")? as u32),
        "modular" => modular(usize_param(params, "p")? as u32),
        "dihedral4" => dihedral4(),
        "quaternion8" => quaternion8(),
        "direct_product" => {
            let factors: Vec<PresetSpec> = match params.get("factors") {
                Some(ParamValue::Groups(f)) => f.clone(),
                Some(ParamValue::Text(t)) => t
                    .split('*')
                    .map(PresetSpec::parse)
                    .collect::<Result<Vec<_>>>()?,
                _ => return Err(invalid("direct_product needs a factors list")),
            };
            let mut it = factors.iter();
            let first = it.next().ok_or_else(|| invalid("direct_product needs factors"))?;
            let mut acc = first.build()?;
            for f in it {
                acc = direct_product(&acc, &f.build()?)?;
            }
            Ok(acc)
        }
        "sharp" | "flat" => {
            let d = usize_param(params, "d")?;
            let q = Modulus::new(usize_param(params, "q")? as u32)?;
            let variant = if name == "sharp" { Variant::Sharp } else { Variant::Flat };
            Ok(free_level3(d, q, variant)?.group)
        }
        other => Err(invalid(format!("unknown preset {other}"))),
    }
}
