//! Concrete groups and the worked examples of endomorphisms built on them.
//!
//! Specs have a small text syntax used by the CLI:
//!
//! ```text
//! cyclic:8  dihedral:16  quaternion:8  heisenberg:3  unitriangular:4:2
//! product(dihedral:8,cyclic:2)  quotient(dihedral:16,3)
//! ```
//!
//! `dihedral:n` and `quaternion:n` take the group *order*. `quotient(S,k)` is
//! `S / γk(S)`, the quotient by the k-th lower central term.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{direct_product_of, Group, GroupMap};
use crate::sign::Sign;

pub const DEFAULT_ORDER_CAP: usize = 8192;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZooSpec {
    Cyclic(usize),
    /// Dihedral group of the given order. Ids `0..m` are `r^k`, ids `m..2m`
    /// are `s*r^k`, with `s*r^a*s = r^-a`.
    Dihedral(usize),
    /// Dicyclic (generalised quaternion for 2-power orders) group of the
    /// given order. Ids `0..k` are `a^i`, ids `k..2k` are `x*a^i`.
    Quaternion(usize),
    /// Upper unitriangular 3x3 matrices over `Z/p`.
    Heisenberg(usize),
    Unitriangular {
        dim: usize,
        modulus: usize,
    },
    Product(Vec<ZooSpec>),
    /// `G / γk(G)`.
    Quotient {
        inner: Box<ZooSpec>,
        term: usize,
    },
}

impl ZooSpec {
    /// Order of the group this spec builds (an upper bound for quotients).
    pub fn order_bound(&self) -> Option<usize> {
        match self {
            ZooSpec::Cyclic(n) | ZooSpec::Dihedral(n) | ZooSpec::Quaternion(n) => Some(*n),
            ZooSpec::Heisenberg(p) => p.checked_pow(3),
            ZooSpec::Unitriangular { dim, modulus } => {
                let d = dim * dim.saturating_sub(1) / 2;
                modulus.checked_pow(u32::try_from(d).ok()?)
            }
            ZooSpec::Product(parts) => parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.order_bound()?)),
            ZooSpec::Quotient { inner, .. } => inner.order_bound(),
        }
    }
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            ZooSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            ZooSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            ZooSpec::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            ZooSpec::Unitriangular { dim, modulus } => write!(f, "unitriangular:{dim}:{modulus}"),
            ZooSpec::Product(parts) => {
                let inner: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "product({})", inner.join(","))
            }
            ZooSpec::Quotient { inner, term } => write!(f, "quotient({inner},{term})"),
        }
    }
}

impl FromStr for ZooSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<ZooSpec> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad zoo spec {s:?}"));
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        if let Some(body) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(body).into_iter().map(str::parse).collect::<Result<Vec<_>>>()?;
            if parts.is_empty() {
                return Err(bad());
            }
            return Ok(ZooSpec::Product(parts));
        }
        if let Some(body) = s.strip_prefix("quotient(").and_then(|r| r.strip_suffix(')')) {
            return match split_top_level(body).as_slice() {
                [inner, term] => Ok(ZooSpec::Quotient { inner: Box::new(inner.parse()?), term: int(term)? }),
                _ => Err(bad()),
            };
        }
        let fields: Vec<&str> = s.split(':').collect();
        match fields.as_slice() {
            ["cyclic", n] => Ok(ZooSpec::Cyclic(int(n)?)),
            ["dihedral", n] => Ok(ZooSpec::Dihedral(int(n)?)),
            ["quaternion", n] => Ok(ZooSpec::Quaternion(int(n)?)),
            ["heisenberg", p] => Ok(ZooSpec::Heisenberg(int(p)?)),
            ["unitriangular", d, p] => Ok(ZooSpec::Unitriangular { dim: int(d)?, modulus: int(p)? }),
            _ => Err(bad()),
        }
    }
}

fn split_top_level(body: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if !body.trim().is_empty() {
        parts.push(body[start..].trim());
    }
    parts
}

pub fn build(spec: &ZooSpec) -> Result<Group> {
    build_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_with_cap(spec: &ZooSpec, cap: usize) -> Result<Group> {
    let order = spec.order_bound().ok_or(Error::OrderCap { order: usize::MAX, cap })?;
    if order > cap {
        return Err(Error::OrderCap { order, cap });
    }
    let name = spec.to_string();
    let invalid = |msg: &str| Error::InvalidParameters(format!("{name}: {msg}"));
    match *spec {
        ZooSpec::Cyclic(n) => {
            if n == 0 {
                return Err(invalid("order must be positive"));
            }
            Group::from_fn(name, n, |a, b| (a + b) % n)
        }
        ZooSpec::Dihedral(n) => {
            if n < 2 || n % 2 != 0 {
                return Err(invalid("order must be even and at least 2"));
            }
            let m = n / 2;
            Group::from_fn(name, n, |a, b| match (a < m, b < m) {
                (true, true) => (a + b) % m,
                (true, false) => m + (b - m + m - a) % m,
                (false, true) => m + (a - m + b) % m,
                (false, false) => (b - m + m - (a - m)) % m,
            })
        }
        ZooSpec::Quaternion(n) => {
            if n < 4 || n % 4 != 0 {
                return Err(invalid("order must be a positive multiple of 4"));
            }
            let k = n / 2;
            let half = k / 2;
            Group::from_fn(name, n, |a, b| match (a < k, b < k) {
                (true, true) => (a + b) % k,
                (true, false) => k + (b - k + k - a) % k,
                (false, true) => k + (a - k + b) % k,
                (false, false) => (half + (b - k) + k - (a - k)) % k,
            })
        }
        ZooSpec::Heisenberg(p) => {
            if p < 2 {
                return Err(invalid("modulus must be at least 2"));
            }
            let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
            Group::from_fn(name, p * p * p, |x, y| {
                let ((a, b, c), (a2, b2, c2)) = (split(x), split(y));
                (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
            })
        }
        ZooSpec::Unitriangular { dim, modulus } => {
            if dim == 0 || modulus < 2 {
                return Err(invalid("need dim >= 1 and modulus >= 2"));
            }
            unitriangular(name, dim, modulus, order)
        }
        ZooSpec::Product(ref parts) => {
            let groups = parts.iter().map(|p| build_with_cap(p, cap)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Group> = groups.iter().collect();
            let (g, _) = direct_product_of(&refs)?;
            rename(g, name)
        }
        ZooSpec::Quotient { ref inner, term } => {
            if term == 0 {
                return Err(invalid("lower central terms start at 1"));
            }
            let g = build_with_cap(inner, cap)?;
            let (q, _) = g.quotient(&lower_central_term(&g, term))?;
            rename(q, name)
        }
    }
}

fn rename(g: Group, name: String) -> Result<Group> {
    let n = g.order();
    let table = (0..n * n).map(|gh| g.mul(gh / n, gh % n)).collect();
    Group::from_table(name, n, table)
}

fn unitriangular(name: String, dim: usize, p: usize, order: usize) -> Result<Group> {
    let slots: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    let decode = |mut x: usize| {
        let mut m = vec![0usize; dim * dim];
        (0..dim).for_each(|i| m[i * dim + i] = 1);
        for &(i, j) in slots.iter().rev() {
            m[i * dim + j] = x % p;
            x /= p;
        }
        m
    };
    let encode = |m: &[usize]| slots.iter().fold(0, |acc, &(i, j)| acc * p + m[i * dim + j]);
    Group::from_fn(name, order, |x, y| {
        let (a, b) = (decode(x), decode(y));
        let mut c = vec![0usize; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                c[i * dim + j] = (i..=j).map(|k| a[i * dim + k] * b[k * dim + j]).sum::<usize>() % p;
            }
        }
        encode(&c)
    })
}

/// `γk(G)`; indices past the end of the series return its last term.
pub fn lower_central_term(g: &Group, k: usize) -> crate::group::Subgroup {
    let series = g.lower_central_series();
    series[(k.max(1) - 1).min(series.len() - 1)].clone()
}

/// Names accepted by [`paper_example`].
pub const PAPER_EXAMPLES: [&str; 8] = [
    "ex-neg-identity",
    "ex-neg-proj",
    "ex-neg-class3",
    "ex-pos-identity",
    "ex-pos-class2",
    "ex-pos-class3",
    "ex-pos-class3-fpf-variant",
    "ex-pos-class4",
];

/// A worked example: a group, an endomorphism and the sign it is meant for.
#[derive(Debug, Clone)]
pub struct PaperExample {
    pub name: &'static str,
    pub description: &'static str,
    pub group: Group,
    pub psi: GroupMap,
    pub epsilon: Sign,
}

/// Builds one of the named worked examples. Abstract "class k" groups are
/// instantiated with the dihedral group of order `2^(k+1)`.
pub fn paper_example(name: &str) -> Result<PaperExample> {
    let dihedral = |n| build(&ZooSpec::Dihedral(n));
    let (name, description, group, images, epsilon): (&'static str, &'static str, Group, Vec<usize>, Sign) = match name
    {
        "ex-neg-identity" => {
            let g = dihedral(16)?;
            let images = g.elements().collect();
            ("ex-neg-identity", "G = D16 (class 3), psi = identity", g, images, Sign::Minus)
        }
        "ex-pos-identity" => {
            let g = dihedral(8)?;
            let images = g.elements().collect();
            ("ex-pos-identity", "G = D8 (class 2), psi = identity", g, images, Sign::Plus)
        }
        "ex-neg-proj" => {
            let s = dihedral(8)?;
            let (g, c) = direct_product_of(&[&s, &s])?;
            let images = g.elements().map(|x| c.encode(&[0, c.decode(x)[1]])).collect();
            ("ex-neg-proj", "G = S x S with S = D8, psi(a,b) = (1,b)", g, images, Sign::Minus)
        }
        "ex-neg-class3" => {
            let s = dihedral(16)?;
            let (t, pi) = s.quotient(&lower_central_term(&s, 3))?;
            let (g, c) = direct_product_of(&[&s, &s, &t])?;
            let images = g
                .elements()
                .map(|x| {
                    let v = c.decode(x);
                    c.encode(&[v[0], v[0], pi.apply(v[1])])
                })
                .collect();
            ("ex-neg-class3", "G = S x S x T, S = D16, T = S/γ3(S), psi(a,b,c) = (a,a,π(b))", g, images, Sign::Minus)
        }
        "ex-pos-class2" => {
            let g = dihedral(8)?;
            let m = 4;
            let images = g.elements().map(|x| if x < m { x } else { m + (x - m + 1) % m }).collect();
            ("ex-pos-class2", "G = D8 (class 2), psi: r -> r, s -> s*r (an outer automorphism)", g, images, Sign::Plus)
        }
        "ex-pos-class3" => {
            let s = dihedral(16)?;
            let (t, pi) = s.quotient(&lower_central_term(&s, 3))?;
            let (g, c) = direct_product_of(&[&s, &t])?;
            let images = g.elements().map(|x| c.encode(&[0, pi.apply(c.decode(x)[0])])).collect();
            ("ex-pos-class3", "G = S x T, S = D16, T = S/γ3(S), psi(x,y) = (1,π(x))", g, images, Sign::Plus)
        }
        "ex-pos-class3-fpf-variant" => {
            let s = dihedral(16)?;
            let (t, pi) = s.quotient(&lower_central_term(&s, 3))?;
            let (u, sigma) = t.quotient(&t.derived_subgroup())?;
            let (g, c) = direct_product_of(&[&s, &t, &u])?;
            let images = chain_images(&g, &c, &pi, &sigma);
            (
                "ex-pos-class3-fpf-variant",
                "G = S x T x U, S = D16, T = S/γ3(S), U = S/γ2(S), psi(a,b,c) = (1,π(a),σ(b))",
                g,
                images,
                Sign::Plus,
            )
        }
        "ex-pos-class4" => {
            let s = dihedral(32)?;
            let (t, pi) = s.quotient(&lower_central_term(&s, 4))?;
            let (u, sigma) = t.quotient(&lower_central_term(&t, 3))?;
            let (g, c) = direct_product_of(&[&s, &t, &u])?;
            let images = chain_images(&g, &c, &pi, &sigma);
            (
                "ex-pos-class4",
                "G = S x T x U, S = D32, T = S/γ4(S), U = S/γ3(S), psi(a,b,c) = (1,π(a),σ(b))",
                g,
                images,
                Sign::Plus,
            )
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let psi = GroupMap::endomorphism(&group, images)?;
    Ok(PaperExample { name, description, group, psi, epsilon })
}

fn chain_images(g: &Group, c: &crate::group::ProductCoords, pi: &GroupMap, sigma: &GroupMap) -> Vec<usize> {
    g.elements()
        .map(|x| {
            let v = c.decode(x);
            c.encode(&[0, pi.apply(v[0]), sigma.apply(v[1])])
        })
        .collect()
}

/// The groups of order at most 32 used for exhaustive endomorphism sweeps.
pub fn sweep_universe() -> Vec<ZooSpec> {
    let specs = [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:5",
        "cyclic:6",
        "cyclic:7",
        "cyclic:8",
        "dihedral:6",
        "dihedral:8",
        "quaternion:8",
        "dihedral:10",
        "dihedral:12",
        "quaternion:12",
        "dihedral:16",
        "quaternion:16",
        "heisenberg:3",
        "unitriangular:3:2",
        "quotient(dihedral:16,3)",
        "product(cyclic:2,cyclic:2)",
        "product(cyclic:2,cyclic:2,cyclic:2)",
        "product(cyclic:2,cyclic:4)",
        "product(cyclic:4,cyclic:4)",
        "product(cyclic:2,dihedral:8)",
        "product(cyclic:2,quaternion:8)",
        "product(cyclic:3,dihedral:6)",
    ];
    specs.iter().map(|s| s.parse().expect("static specs parse")).collect()
}

/// Zoo specs of the given order, leaf families first, used to name small
/// groups up to isomorphism. Not a complete classification.
pub fn catalogue(order: usize) -> Vec<ZooSpec> {
    let mut out = vec![ZooSpec::Cyclic(order)];
    if order >= 6 && order.is_multiple_of(2) {
        out.push(ZooSpec::Dihedral(order));
    }
    if order >= 8 && order.is_multiple_of(4) {
        out.push(ZooSpec::Quaternion(order));
    }
    for a in 2..order {
        let b = order / a;
        if !order.is_multiple_of(a) || a > b {
            continue;
        }
        for left in catalogue(a) {
            for right in catalogue(b) {
                out.push(ZooSpec::Product(vec![left.clone(), right]));
            }
        }
    }
    out
}
