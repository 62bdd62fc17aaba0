//! Transcribed reference tables for the groups of rank at most three: the
//! polynomials `Xi^C_{u,1}`, their values `xi^C_{u,z}` at `u = 1`, the class sets
//! `S_u` and `ss_u`, special-piece groupings, `c_u` and `n_u`.
//!
//! One asset file per type under `data/`, one record per line:
//! `type | class | class-word | z | kind | payload | source`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive};

use crate::coxeter::{build_weyl, CoxeterGroup, Family, TypeLabel};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;
use crate::groups::unipotent_partitions;
use crate::partition::Partition;

const ASSETS: [(&str, &str); 6] = [
    ("A1", include_str!("../data/A1.txt")),
    ("A2", include_str!("../data/A2.txt")),
    ("B2", include_str!("../data/B2.txt")),
    ("G2", include_str!("../data/G2.txt")),
    ("B3", include_str!("../data/B3.txt")),
    ("C3", include_str!("../data/C3.txt")),
];

/// Types with transcribed tables.
pub fn tabulated_types() -> Vec<TypeLabel> {
    ASSETS.iter().map(|(l, _)| l.parse().expect("asset label")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `Xi^C_{u,z}` as a polynomial in `u`.
    Xi,
    /// `xi^C_{u,z}`, the value at `u = 1`.
    XiAtOne,
    S,
    Ss,
    Piece,
    Cu,
    Nu,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Xi => "Xi",
            Kind::XiAtOne => "xi",
            Kind::S => "S",
            Kind::Ss => "ss",
            Kind::Piece => "piece",
            Kind::Cu => "c_u",
            Kind::Nu => "n_u",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Xi" => Kind::Xi,
            "xi" => Kind::XiAtOne,
            "S" => Kind::S,
            "ss" => Kind::Ss,
            "piece" => Kind::Piece,
            "c_u" => Kind::Cu,
            "n_u" => Kind::Nu,
            _ => return Err(Error::Parse(format!("unknown kind {s:?}"))),
        })
    }
}

/// An element of the component group, named by its order (`1` is the identity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z(pub u8);

impl Z {
    pub const ONE: Z = Z(1);
}

impl fmt::Display for Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            1 => write!(f, "1"),
            n => write!(f, "z{n}"),
        }
    }
}

impl FromStr for Z {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Z::ONE),
            t => t
                .strip_prefix('z')
                .and_then(|n| n.parse().ok())
                .filter(|&n| n > 1)
                .map(Z)
                .ok_or_else(|| Error::Parse(format!("bad component-group element {s:?}"))),
        }
    }
}

/// The `z` of an entry; `likely` is set when the printed subscript is suspected to be a typo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZKey {
    pub printed: Z,
    pub likely: Option<Z>,
}

impl ZKey {
    pub fn is_disputed(&self) -> bool {
        self.likely.is_some()
    }
}

impl fmt::Display for ZKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.likely {
            Some(l) => write!(f, "{}?{}", self.printed, l),
            None => write!(f, "{}", self.printed),
        }
    }
}

/// A unipotent class as named in the tables, with its Jordan type where one exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnipotentRef {
    pub name: String,
    pub partition: Option<Partition>,
}

impl fmt::Display for UnipotentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.partition {
            Some(p) => write!(f, "{}={}", self.name, p),
            None => write!(f, "{}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Poly(LaurentPoly),
    Int(i64),
    /// Conjugacy class ids of the Weyl group.
    Classes(Vec<usize>),
    Class(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruthEntry {
    pub label: TypeLabel,
    /// One class, or several for a special piece.
    pub classes: Vec<UnipotentRef>,
    pub w_class: Option<usize>,
    pub z: Option<ZKey>,
    pub kind: Kind,
    pub payload: Payload,
    pub source: String,
}

impl GroundTruthEntry {
    pub fn unipotent(&self) -> &str {
        &self.classes[0].name
    }

    pub fn is_disputed(&self) -> bool {
        self.z.is_some_and(|z| z.is_disputed())
    }
}

/// Parses a polynomial in `v` such as `2v^6(1+v^2)^2` or `v^8(v^4-1)`.
pub fn parse_v_poly(text: &str) -> Result<LaurentPoly> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let p = parse_sum(&chars, &mut pos)?;
    if pos != chars.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    Ok(p)
}

fn parse_number(c: &[char], pos: &mut usize) -> Option<u32> {
    let start = *pos;
    while *pos < c.len() && c[*pos].is_ascii_digit() {
        *pos += 1;
    }
    (start < *pos).then(|| c[start..*pos].iter().collect::<String>().parse().ok()).flatten()
}

fn parse_exponent(c: &[char], pos: &mut usize) -> Result<u32> {
    if c.get(*pos) == Some(&'^') {
        *pos += 1;
        parse_number(c, pos).ok_or_else(|| Error::Parse("missing exponent".into()))
    } else {
        Ok(1)
    }
}

fn parse_sum(c: &[char], pos: &mut usize) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    let mut sign = 1i64;
    if c.get(*pos) == Some(&'-') {
        sign = -1;
        *pos += 1;
    }
    loop {
        let t = parse_product(c, pos)?;
        acc = if sign > 0 { &acc + &t } else { &acc - &t };
        match c.get(*pos) {
            Some('+') => sign = 1,
            Some('-') => sign = -1,
            _ => return Ok(acc),
        }
        *pos += 1;
    }
}

fn parse_product(c: &[char], pos: &mut usize) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    let mut any = false;
    loop {
        let factor = match c.get(*pos) {
            Some(d) if d.is_ascii_digit() => LaurentPoly::constant(parse_number(c, pos).expect("digit")),
            Some('v') => {
                *pos += 1;
                LaurentPoly::u_pow(parse_exponent(c, pos)? as i32)
            }
            Some('(') => {
                *pos += 1;
                let inner = parse_sum(c, pos)?;
                if c.get(*pos) != Some(&')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                *pos += 1;
                inner.pow(parse_exponent(c, pos)?)
            }
            _ if any => return Ok(acc),
            _ => return Err(Error::Parse(format!("unexpected input at offset {pos}"))),
        };
        acc = &acc * &factor;
        any = true;
    }
}

/// Polynomial in `v` to the same polynomial in `u = v^2`.
pub fn v_to_u(p: &LaurentPoly) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        if e % 2 != 0 {
            return Err(Error::Parse(format!("odd power of v in {p}")));
        }
        out = &out + &LaurentPoly::monomial(c.clone(), e / 2);
    }
    Ok(out)
}

/// A polynomial in `u`, written in `v` (`2v^6+v^2-1`).
pub fn format_v_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(i32, num_bigint::BigInt)> = p.terms().map(|(e, c)| (e, c.clone())).collect();
    terms.reverse();
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        if c.is_negative() {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        let a = c.abs();
        let unit = a.to_i64() == Some(1);
        match (2 * e, unit) {
            (0, _) => s.push_str(&a.to_string()),
            (ve, true) => s.push_str(&format!("v^{ve}")),
            (ve, false) => s.push_str(&format!("{a}v^{ve}")),
        }
    }
    s
}

/// Reference tables for one type.
#[derive(Debug, Clone)]
pub struct Tables {
    group: CoxeterGroup,
    entries: Vec<GroundTruthEntry>,
}

impl Tables {
    pub fn load(label: TypeLabel) -> Result<Self> {
        let key = label.to_string();
        let text = ASSETS
            .iter()
            .find(|(l, _)| *l == key)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::NotTabulated(format!("no tables for {label}")))?;
        Self::parse(label, text)
    }

    /// Parses asset text; also checks class names against the computed labels.
    pub fn parse(label: TypeLabel, text: &str) -> Result<Self> {
        let group = build_weyl(label)?;
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = parse_line(&group, line).map_err(|e| Error::Parse(format!("{label} line {}: {e}", lineno + 1)))?;
            entries.push(entry);
        }
        if label.family != Family::G {
            let computed = unipotent_partitions(label)?;
            for e in &entries {
                for r in &e.classes {
                    let ok = computed.iter().any(|c| Some(&c.partition) == r.partition.as_ref() && c.name() == r.name);
                    if !ok {
                        return Err(Error::Parse(format!("{label}: class {r} does not match the computed labels")));
                    }
                }
            }
        }
        Ok(Self { group, entries })
    }

    pub fn label(&self) -> TypeLabel {
        self.group.label()
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn entries(&self) -> &[GroundTruthEntry] {
        &self.entries
    }

    /// Unipotent class names in table order (from the `S` rows).
    pub fn unipotent_names(&self) -> Vec<String> {
        self.entries.iter().filter(|e| e.kind == Kind::S).map(|e| e.unipotent().to_string()).collect()
    }

    pub fn unipotent_ref(&self, name: &str) -> Option<&UnipotentRef> {
        self.entries.iter().flat_map(|e| &e.classes).find(|r| r.name == name)
    }

    /// The undisputed entry with the given key.
    pub fn lookup(&self, kind: Kind, unipotent: &str, w_class: Option<usize>, z: Option<Z>) -> Result<&GroundTruthEntry> {
        self.entries
            .iter()
            .find(|e| {
                e.kind == kind
                    && e.classes.len() == 1
                    && e.unipotent() == unipotent
                    && e.w_class == w_class
                    && e.z.map(|k| k.printed) == z
                    && !e.is_disputed()
            })
            .ok_or_else(|| {
                let class = w_class.map(|c| self.group.class_label(c)).unwrap_or_default();
                let z = z.map(|z| z.to_string()).unwrap_or_default();
                Error::NotTabulated(format!("{} {} {unipotent} {class} {z}", self.label(), kind.as_str()))
            })
    }

    pub fn xi_poly(&self, unipotent: &str, w_class: usize) -> Result<&LaurentPoly> {
        match &self.lookup(Kind::Xi, unipotent, Some(w_class), Some(Z::ONE))?.payload {
            Payload::Poly(p) => Ok(p),
            _ => unreachable!("Xi rows carry polynomials"),
        }
    }

    pub fn xi_at_one(&self, unipotent: &str, w_class: usize, z: Z) -> Result<i64> {
        match self.lookup(Kind::XiAtOne, unipotent, Some(w_class), Some(z))?.payload {
            Payload::Int(v) => Ok(v),
            _ => unreachable!("xi rows carry integers"),
        }
    }

    /// `S_u` or `ss_u`, as class ids.
    pub fn class_set(&self, kind: Kind, unipotent: &str) -> Result<&[usize]> {
        match &self.lookup(kind, unipotent, None, None)?.payload {
            Payload::Classes(c) => Ok(c),
            _ => Err(Error::Parse(format!("{} row is not a class set", kind.as_str()))),
        }
    }

    pub fn n_u(&self, unipotent: &str) -> Result<i64> {
        match self.lookup(Kind::Nu, unipotent, None, None)?.payload {
            Payload::Int(v) => Ok(v),
            _ => Err(Error::Parse("n_u row is not an integer".into())),
        }
    }

    pub fn c_u(&self, unipotent: &str) -> Result<usize> {
        match self.lookup(Kind::Cu, unipotent, None, None)?.payload {
            Payload::Class(c) => Ok(c),
            _ => Err(Error::Parse("c_u row is not a class".into())),
        }
    }

    /// Special pieces: member class names and the displayed union of their sets.
    pub fn pieces(&self) -> Vec<(Vec<String>, Vec<usize>)> {
        self.entries
            .iter()
            .filter(|e| e.kind == Kind::Piece)
            .map(|e| {
                let names = e.classes.iter().map(|r| r.name.clone()).collect();
                match &e.payload {
                    Payload::Classes(c) => (names, c.clone()),
                    _ => (names, Vec::new()),
                }
            })
            .collect()
    }

    pub fn disputed(&self) -> impl Iterator<Item = &GroundTruthEntry> {
        self.entries.iter().filter(|e| e.is_disputed())
    }

    /// Writes an entry back in asset format.
    pub fn format_line(&self, e: &GroundTruthEntry) -> String {
        let g = &self.group;
        let classes: Vec<String> = e.classes.iter().map(|r| r.to_string()).collect();
        let word = |c: usize| {
            let label = g.class_label(c);
            label.trim_start_matches('(').trim_end_matches(')').to_string()
        };
        let payload = match &e.payload {
            Payload::Poly(p) => format_v_poly(p),
            Payload::Int(v) => v.to_string(),
            Payload::Class(c) => word(*c),
            Payload::Classes(cs) => format!("{{{}}}", cs.iter().map(|&c| word(c)).collect::<Vec<_>>().join(", ")),
        };
        format!(
            "{} | {} | {} | {} | {} | {} | {}",
            e.label,
            classes.join(" + "),
            e.w_class.map(word).unwrap_or_else(|| "-".into()),
            e.z.map(|z| z.to_string()).unwrap_or_else(|| "-".into()),
            e.kind.as_str(),
            payload,
            e.source
        )
    }
}

fn parse_unipotent(text: &str) -> Result<UnipotentRef> {
    let t = text.trim();
    match t.split_once('=') {
        Some((name, part)) => Ok(UnipotentRef { name: name.trim().to_string(), partition: Some(part.parse()?) }),
        None => Ok(UnipotentRef { name: t.to_string(), partition: None }),
    }
}

fn parse_class_list(group: &CoxeterGroup, text: &str) -> Result<Vec<usize>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected a set, got {text:?}")))?;
    inner.split(',').map(|w| group.parse_class(w.trim())).collect()
}

fn parse_line(group: &CoxeterGroup, line: &str) -> Result<GroundTruthEntry> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    let [ty, class, word, z, kind, payload, source] = fields[..] else {
        return Err(Error::Parse(format!("expected 7 fields, got {}", fields.len())));
    };
    let label: TypeLabel = ty.parse()?;
    if label != group.label() {
        return Err(Error::GroupMismatch(label.to_string(), group.label().to_string()));
    }
    let kind: Kind = kind.parse()?;
    let classes = class.split(" + ").map(parse_unipotent).collect::<Result<Vec<_>>>()?;
    let w_class = match word {
        "-" => None,
        w => Some(group.parse_class(w)?),
    };
    let z = match z {
        "-" => None,
        t => Some(match t.split_once('?') {
            Some((a, b)) => ZKey { printed: a.parse()?, likely: Some(b.parse()?) },
            None => ZKey { printed: t.parse()?, likely: None },
        }),
    };
    let payload = match kind {
        Kind::Xi => Payload::Poly(v_to_u(&parse_v_poly(payload)?)?),
        Kind::XiAtOne | Kind::Nu => {
            Payload::Int(payload.parse().map_err(|_| Error::Parse(format!("bad integer {payload:?}")))?)
        }
        Kind::S | Kind::Ss | Kind::Piece => Payload::Classes(parse_class_list(group, payload)?),
        Kind::Cu => Payload::Class(group.parse_class(payload)?),
    };
    Ok(GroundTruthEntry { label, classes, w_class, z, kind, payload, source: source.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn tables(t: &str) -> Tables {
        Tables::load(t.parse().unwrap()).unwrap()
    }

    #[test]
    fn all_assets_parse() {
        for t in tabulated_types() {
            let tb = Tables::load(t).unwrap();
            assert!(!tb.entries().is_empty());
        }
    }

    #[test]
    fn polynomial_parser() {
        let p = parse_v_poly("2v^6(1+v^2)^2").unwrap();
        assert_eq!(v_to_u(&p).unwrap(), LaurentPoly::from_coeffs(3, &[2, 4, 2]));
        let q = parse_v_poly("v^14(v^4-1)").unwrap();
        assert_eq!(v_to_u(&q).unwrap(), LaurentPoly::from_coeffs(7, &[-1, 0, 1]));
        assert_eq!(parse_v_poly("-v^2+3").unwrap(), LaurentPoly::from_coeffs(0, &[3, 0, -1]));
        assert!(parse_v_poly("v^3").map(|p| v_to_u(&p)).unwrap().is_err());
        assert!(parse_v_poly("(1+v").is_err());
    }

    #[test]
    fn lookups() {
        let c3 = tables("C3");
        let s3 = c3.group().parse_class("s3").unwrap();
        assert_eq!(c3.xi_poly("u6", s3).unwrap(), &LaurentPoly::from_coeffs(3, &[1, 2, 2, 2, 1]));
        let g2 = tables("G2");
        let w0 = g2.group().parse_class("s1s2s1s2s1s2").unwrap();
        assert_eq!(g2.xi_at_one("u1", w0, Z::ONE).unwrap(), -3);
        let a2 = tables("A2");
        let s1 = a2.group().parse_class("s1").unwrap();
        assert!(matches!(a2.xi_poly("u3", s1), Err(Error::NotTabulated(_))));
    }

    #[test]
    fn set_sizes_cover_the_classes() {
        for (t, n) in [("A2", 3), ("B2", 5), ("G2", 6), ("B3", 10), ("C3", 10)] {
            let tb = tables(t);
            let total: usize = tb.unipotent_names().iter().map(|u| tb.class_set(Kind::S, u).unwrap().len()).sum();
            assert_eq!(total, n, "{t}");
        }
    }

    #[test]
    fn polynomials_at_one_agree_with_traces() {
        for t in tabulated_types() {
            let tb = Tables::load(t).unwrap();
            for e in tb.entries().iter().filter(|e| e.kind == Kind::Xi) {
                let Payload::Poly(p) = &e.payload else { unreachable!() };
                let at_one = p.eval(&rat(1)).unwrap();
                if let Ok(v) = tb.xi_at_one(e.unipotent(), e.w_class.unwrap(), Z::ONE) {
                    assert_eq!(at_one, rat(v), "{}", tb.format_line(e));
                }
            }
        }
    }

    #[test]
    fn lines_round_trip() {
        for t in tabulated_types() {
            let tb = Tables::load(t).unwrap();
            for e in tb.entries() {
                let line = tb.format_line(e);
                assert_eq!(&parse_line(tb.group(), &line).unwrap(), e, "{line}");
            }
        }
    }

    #[test]
    fn disputed_entries_are_kept() {
        let b3 = tables("B3");
        let d: Vec<_> = b3.disputed().collect();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].z.unwrap().likely, Some(Z(2)));
        let s3 = b3.group().parse_class("s3").unwrap();
        assert_eq!(b3.xi_at_one("u4", s3, Z::ONE).unwrap(), 8);
    }
}
