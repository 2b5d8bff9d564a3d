//! Tower descriptions: generators with relations `g^2 = g + c`, plus named
//! derived elements.
//!
//! Text format, one statement per line (`#` starts a comment):
//!
//! ```text
//! gen z = 1
//! gen a = z*T
//! gen b = (T^2+z*T)*a
//! root g = ...      # integral root r of r^2 + r = expr
//! let x = b+a       # named element
//! top b             # designated primitive element
//! ```

use std::sync::Arc;

use super::element::{imul, TowerElement};
use super::TowerError;
use crate::galois::{fp, F2Poly};
use crate::text;

pub const MAX_GENERATORS: usize = 8;
const ROOT_DEGREE_BOUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
struct GenDef {
    name: String,
    /// Relation constant over the earlier generators, length `2^index`.
    constant: Vec<F2Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Derived {
    name: String,
    num: Vec<F2Poly>,
    den: F2Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    name: String,
    gens: Vec<GenDef>,
    derived: Vec<Derived>,
    top: Option<String>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && !matches!(s, "T" | "t" | "X" | "x")
}

impl TowerSpec {
    pub fn parse(name: &str, src: &str) -> Result<Arc<TowerSpec>, TowerError> {
        let mut spec = TowerSpec {
            name: name.to_string(),
            gens: Vec::new(),
            derived: Vec::new(),
            top: None,
        };
        let mut current = Arc::new(spec.clone());
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| TowerError::Spec(format!("line {}: {msg}", lineno + 1));
            let (kw, rest) = line.split_once(char::is_whitespace).ok_or_else(|| err("missing body"))?;
            let rest = rest.trim();
            if kw == "top" {
                if !spec.has_name(rest) {
                    return Err(err(&format!("unknown element `{rest}`")));
                }
                spec.top = Some(rest.to_string());
                continue;
            }
            let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected `name = expr`"))?;
            let lhs = lhs.trim();
            if !valid_ident(lhs) {
                return Err(err(&format!("invalid name `{lhs}`")));
            }
            if spec.has_name(lhs) {
                return Err(err(&format!("duplicate name `{lhs}`")));
            }
            let value = current.eval(rhs)?;
            match kw {
                "gen" => {
                    if !spec.derived.is_empty() {
                        return Err(err("generators must precede `let` and `root`"));
                    }
                    if spec.gens.len() == MAX_GENERATORS {
                        return Err(err("too many generators"));
                    }
                    if !value.is_integral() {
                        return Err(err("relation constants must be integral"));
                    }
                    spec.gens.push(GenDef {
                        name: lhs.to_string(),
                        constant: value.numerators().to_vec(),
                    });
                }
                "let" => spec.derived.push(Derived {
                    name: lhs.to_string(),
                    num: value.numerators().to_vec(),
                    den: value.denominator().clone(),
                }),
                "root" => {
                    let r = integral_as_root(&value)?;
                    spec.derived.push(Derived {
                        name: lhs.to_string(),
                        num: r.numerators().to_vec(),
                        den: F2Poly::one(),
                    });
                }
                _ => return Err(err(&format!("unknown keyword `{kw}`"))),
            }
            current = Arc::new(spec.clone());
        }
        Ok(current)
    }

    /// Evaluates an expression over the generators, derived names and `T`.
    pub fn eval(self: &Arc<Self>, expr: &str) -> Result<TowerElement, TowerError> {
        let e = text::parse(expr)?;
        let unit = TowerElement::zero(self);
        Ok(e.eval(&unit, &|v: &str| self.element(v))?)
    }

    fn has_name(&self, n: &str) -> bool {
        self.gens.iter().any(|g| g.name == n) || self.derived.iter().any(|d| d.name == n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn dimension(&self) -> usize {
        1 << self.gens.len()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn derived_names(&self) -> Vec<String> {
        self.derived.iter().map(|d| d.name.clone()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn top(&self) -> Option<&str> {
        self.top.as_deref()
    }

    pub(crate) fn constant_dense(&self, i: usize) -> &[F2Poly] {
        &self.gens[i].constant
    }

    /// The relation constant of generator `i`, embedded in the full algebra.
    pub fn constant(self: &Arc<Self>, i: usize) -> TowerElement {
        let mut num = self.gens[i].constant.clone();
        num.resize(self.dimension(), F2Poly::zero());
        TowerElement::from_parts(self.clone(), num, F2Poly::one())
    }

    /// A generator, derived element or `T`, by name.
    pub fn element(self: &Arc<Self>, name: &str) -> Option<TowerElement> {
        if matches!(name, "T" | "t") {
            return Some(TowerElement::t(self));
        }
        if let Some(i) = self.generator_index(name) {
            return Some(TowerElement::generator(self, i));
        }
        self.derived.iter().find(|d| d.name == name).map(|d| {
            TowerElement::from_parts(self.clone(), d.num.clone(), d.den.clone())
        })
    }

    pub fn require(self: &Arc<Self>, name: &str) -> Result<TowerElement, TowerError> {
        self.element(name)
            .ok_or_else(|| TowerError::UnknownElement(name.to_string()))
    }

    /// The designated primitive element, defaulting to the last generator.
    pub fn top_element(self: &Arc<Self>) -> TowerElement {
        self.top
            .as_deref()
            .and_then(|t| self.element(t))
            .unwrap_or_else(|| match self.gens.len() {
                0 => TowerElement::one(self),
                n => TowerElement::generator(self, n - 1),
            })
    }

    /// Text form accepted by [`TowerSpec::parse`].
    pub fn to_text(self: &Arc<Self>) -> String {
        let mut out = String::new();
        for (i, g) in self.gens.iter().enumerate() {
            out.push_str(&format!("gen {} = {}\n", g.name, self.constant(i)));
        }
        for d in &self.derived {
            let e = self.element(&d.name).unwrap();
            out.push_str(&format!("let {} = {}\n", d.name, e));
        }
        if let Some(t) = &self.top {
            out.push_str(&format!("top {t}\n"));
        }
        out
    }
}

/// Integral `r` with `r^2 + r = c`. The ring of integers of an unramified
/// Artin–Schreier tower with integral constants is the `F_2[T]`-span of the
/// generator monomials, so `r` has polynomial coordinates and the equation
/// is `F_2`-linear in their bits. Coefficient degrees are tried up to a bound;
/// the root with even constant coordinate is returned.
pub fn integral_as_root(c: &TowerElement) -> Result<TowerElement, TowerError> {
    if !c.is_integral() {
        return Err(TowerError::NoIntegralRoot(c.to_string()));
    }
    let spec = c.spec();
    let n = spec.dimension();
    let squares: Vec<Vec<F2Poly>> = (0..n)
        .map(|m| {
            let mut e = vec![F2Poly::zero(); n];
            e[m] = F2Poly::one();
            imul(spec, &e, &e)
        })
        .collect();
    let target = c.numerators();
    let tdeg = target.iter().filter_map(F2Poly::degree).max().unwrap_or(0);
    for d in 0..=ROOT_DEGREE_BOUND {
        let mut cols: Vec<Vec<F2Poly>> = Vec::with_capacity(n * (d + 1));
        for (m, sq) in squares.iter().enumerate() {
            for j in 0..=d {
                let mut col: Vec<F2Poly> = sq.iter().map(|x| x.shl(2 * j)).collect();
                col[m] = &col[m] + &F2Poly::monomial(j);
                cols.push(col);
            }
        }
        let width = cols
            .iter()
            .flat_map(|c| c.iter().filter_map(F2Poly::degree))
            .max()
            .unwrap_or(0)
            .max(tdeg)
            + 1;
        let flat = |v: &[F2Poly]| -> Vec<u32> {
            v.iter()
                .flat_map(|p| (0..width).map(move |i| p.coeff(i) as u32))
                .collect()
        };
        let fcols: Vec<Vec<u32>> = cols.iter().map(|c| flat(c)).collect();
        if let Some(x) = fp::solve_columns(&fcols, &flat(target), 2) {
            let mut num = vec![F2Poly::zero(); n];
            for (m, slot) in num.iter_mut().enumerate() {
                for j in 0..=d {
                    if x[m * (d + 1) + j] == 1 {
                        *slot = &*slot + &F2Poly::monomial(j);
                    }
                }
            }
            let r = TowerElement::from_parts(spec.clone(), num, F2Poly::one());
            debug_assert_eq!(&(&r * &r) + &r, *c);
            return Ok(r);
        }
    }
    Err(TowerError::NoIntegralRoot(c.to_string()))
}

/// Preset names understood by [`preset`].
pub const PRESET_NAMES: &[&str] = &[
    "paper:K",
    "paper:Kprime",
    "paper:K(p)",
    "paper:Kprime(p)",
    "paper:F",
    "paper:L",
    "paper:M",
    "paper:N",
    "paper:N(p)",
    "paper:Kgamma",
    "F2(T)",
    "F4(T)",
    "F2(T)(aT)",
];

const C_GAMMA: &str = "a*T+(T^2+(z+1)*T)*aT";

fn family_top(p: u64, twist: bool) -> String {
    let tw = if twist { "+T^3" } else { "" };
    format!("gen z = 1\ngen a = z*T\ngen kp = (T^2+z*T)*a+T^{p}{tw}\ntop kp\n")
}

/// Text of the tower for `N(p)`: `N` together with `α_{T^p}` and the
/// primitive elements of `K(p)` and `K'(p)`.
fn family_closure(p: u64) -> String {
    let mut s = String::from("gen z = 1\ngen aT = T\ngen aT3 = T^3\n");
    let atp = match p {
        2 => None,
        3 => Some("aT3".to_string()),
        _ => {
            s.push_str(&format!("gen aT{p} = T^{p}\n"));
            Some(format!("aT{p}"))
        }
    };
    s.push_str("gen a = z*T\ngen b = (T^2+z*T)*a\n");
    s.push_str(&format!("root g = {C_GAMMA}\n"));
    s.push_str("let aT2 = aT+T\n");
    let atp = atp.unwrap_or_else(|| "aT2".to_string());
    s.push_str(&format!("let kp = b+{atp}\nlet kpp = b+{atp}+aT3\ntop b\n"));
    s
}

fn parse_family(name: &str, prefix: &str) -> Option<u64> {
    name.strip_prefix(prefix)?
        .strip_suffix(')')?
        .parse()
        .ok()
}

/// Looks up a shipped tower. `paper:K(p)` and friends take a prime in the
/// parentheses, e.g. `paper:K(5)`.
pub fn preset(name: &str) -> Result<Arc<TowerSpec>, TowerError> {
    let src = match name {
        "paper:K" => "gen z = 1\ngen a = z*T\ngen b = (T^2+z*T)*a\ntop b\n".to_string(),
        "paper:Kprime" => "gen z = 1\ngen a = z*T\ngen bp = (T^2+z*T)*a+T^3\ntop bp\n".to_string(),
        "paper:F" => "gen z = 1\ngen a = z*T\ntop a\n".to_string(),
        "paper:L" => "gen z = 1\ngen aT = T\ngen a = z*T\n".to_string(),
        "paper:M" => "gen z = 1\ngen aT = T\ngen aT3 = T^3\ngen a = z*T\n".to_string(),
        "paper:N" => format!(
            "gen z = 1\ngen aT = T\ngen aT3 = T^3\ngen a = z*T\ngen b = (T^2+z*T)*a\n\
             root g = {C_GAMMA}\nlet aT2 = aT+T\nlet bp = b+aT3\ntop b\n"
        ),
        "paper:Kgamma" => "gen aT = T\ngen w = aT+T\ngen g = T*w+(T^2+T)*aT\ntop g\n".to_string(),
        "F2(T)" => String::new(),
        "F4(T)" => "gen z = 1\n".to_string(),
        "F2(T)(aT)" => "gen aT = T\n".to_string(),
        _ => {
            let (p, src) = if let Some(p) = parse_family(name, "paper:K(") {
                (p, family_top(p, false))
            } else if let Some(p) = parse_family(name, "paper:Kprime(") {
                (p, family_top(p, true))
            } else if let Some(p) = parse_family(name, "paper:N(") {
                (p, family_closure(p))
            } else {
                return Err(TowerError::UnknownPreset(name.to_string()));
            };
            if !fp::is_prime(p) {
                return Err(TowerError::Spec(format!("{p} is not prime")));
            }
            src
        }
    };
    TowerSpec::parse(name, &src)
}

/// A preset name or a path to a spec file.
pub fn load(name: &str) -> Result<Arc<TowerSpec>, TowerError> {
    match preset(name) {
        Err(TowerError::UnknownPreset(_)) if std::path::Path::new(name).is_file() => {
            let src = std::fs::read_to_string(name)
                .map_err(|e| TowerError::Spec(format!("{name}: {e}")))?;
            TowerSpec::parse(name, &src)
        }
        other => other,
    }
}
