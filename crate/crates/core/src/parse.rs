//! Text grammars: series literals, surface and curve divisors, rational forms.
//!
//! ```text
//! series   := term (('+'|'-') term)* ('@[' int '..' int ';' int '..' int ']')?
//! term     := scalar? ('*'? var ('^' int)?)*              var := 'u' | 't'
//! divisor  := dterm (('+'|'-') dterm)* | '0'              dterm := int? '*'? curve
//! curve    := label | 'line(' scalar ',' scalar ',' scalar ')' | ('X='|'Y=') (scalar|'inf')
//! curvediv := cterm (('+'|'-') cterm)* | '0'              cterm := int? '[' (scalar|'inf') ']'
//! form     := sum over products of '(' form ')' | x | y | number, with '^' int and '/'
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::curve::{CurveDivisor, CurvePoint};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{IterLaurent, Laurent1, RationalFunction};
use crate::surface::{Surface, SurfaceCurve, SurfaceDivisor, SurfaceKind};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn unsigned(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }

    fn has_digit(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    /// `-? digits`, or `( -? digits )`.
    fn signed(&mut self) -> Result<i64> {
        if self.eat(b'(') {
            let v = self.signed()?;
            self.expect(b')')?;
            return Ok(v);
        }
        let neg = self.eat(b'-');
        let v = self.unsigned()?;
        Ok(if neg { -v } else { v })
    }

    /// `int` or `int/int`.
    fn scalar(&mut self, k: FieldSpec) -> Result<Scalar> {
        let neg = self.eat(b'-');
        let n = self.unsigned()?;
        let n = if neg { -n } else { n };
        let save = self.pos;
        if self.eat(b'/') && self.has_digit() {
            let d = self.unsigned()?;
            if d == 0 || (matches!(k, FieldSpec::Prime(p) if (d as u64).is_multiple_of(p))) {
                return self.err("zero denominator");
            }
            return Ok(k.frac(n, d));
        }
        self.pos = save;
        Ok(k.int(n))
    }
}

/// Parse a series literal; without a window annotation the series is exact.
pub fn parse_series(field: FieldSpec, s: &str) -> Result<IterLaurent> {
    let mut c = Cursor::new(s);
    let mut terms: Vec<((i64, i64), Scalar)> = Vec::new();
    let mut first = true;
    loop {
        let neg = if first {
            c.eat(b'-')
        } else if c.eat(b'+') {
            false
        } else if c.eat(b'-') {
            true
        } else {
            break;
        };
        first = false;
        let mut coeff = field.one();
        let mut exps = (0i64, 0i64);
        let mut seen_any = false;
        if c.has_digit() {
            coeff = c.scalar(field)?;
            seen_any = true;
        }
        loop {
            let save = c.pos;
            if seen_any && !c.eat(b'*') {
                c.pos = save;
            }
            let var = match c.peek() {
                Some(b'u') => 0,
                Some(b't') => 1,
                _ => {
                    c.pos = save;
                    break;
                }
            };
            c.pos += 1;
            let e = if c.eat(b'^') { c.signed()? } else { 1 };
            if var == 0 {
                exps.0 += e;
            } else {
                exps.1 += e;
            }
            seen_any = true;
        }
        if !seen_any {
            return c.err("expected a term");
        }
        terms.push((exps, if neg { -coeff } else { coeff }));
    }
    if terms.is_empty() && !c.eat(b'0') {
        return c.err("expected a term");
    }
    if c.eat_str("@[") {
        let ulo = c.signed()?;
        if !c.eat_str("..") {
            return c.err("expected `..`");
        }
        let uhi = c.signed()?;
        c.expect(b';')?;
        let tlo = c.signed()?;
        if !c.eat_str("..") {
            return c.err("expected `..`");
        }
        let thi = c.signed()?;
        c.expect(b']')?;
        c.finish()?;
        if ulo > uhi || tlo > thi {
            return Err(Error::Parse { pos: c.pos, msg: "empty window".into() });
        }
        let mut by_level: BTreeMap<i64, Vec<(i64, Scalar)>> = BTreeMap::new();
        for ((i, j), a) in terms {
            if j < tlo || j > thi || i < ulo || i > uhi {
                return Err(Error::Parse { pos: c.pos, msg: format!("term u^{i} t^{j} lies outside its window") });
            }
            by_level.entry(j).or_default().push((i, a));
        }
        let mut levels = BTreeMap::new();
        for j in tlo..=thi {
            let ts = by_level.remove(&j).unwrap_or_default();
            levels.insert(j, Laurent1::from_terms(field, ts, ulo, uhi)?);
        }
        return IterLaurent::from_levels(field, levels, tlo, thi, false);
    }
    c.finish()?;
    Ok(IterLaurent::exact_from_terms(field, terms))
}

/// Parse a divisor on a surface, e.g. `2L0 - 1L2` or `3F + 1G`.
pub fn parse_divisor(s: &Surface, text: &str) -> Result<SurfaceDivisor> {
    let mut c = Cursor::new(text);
    let mut d = SurfaceDivisor::zero();
    if c.eat(b'0') && c.at_end() {
        return Ok(d);
    }
    c.pos = 0;
    let mut first = true;
    while !c.at_end() {
        let sign = if c.eat(b'+') {
            1
        } else if c.eat(b'-') {
            -1
        } else if first {
            1
        } else {
            return c.err("expected `+` or `-`");
        };
        first = false;
        let n = if c.has_digit() { c.unsigned()? } else { 1 };
        c.eat(b'*');
        let curve = curve_label(&mut c, s)?;
        d.add_at(curve, sign * n);
    }
    if first {
        return c.err("empty divisor");
    }
    Ok(d)
}

/// A boundary label (`L0`, `F`, ...), `line(a,b,c)` on P^2, or `X=c` / `Y=c` on P^1 x P^1.
fn curve_label(c: &mut Cursor, s: &Surface) -> Result<SurfaceCurve> {
    c.skip_ws();
    let start = c.pos;
    let k = s.field;
    if c.eat_str("line(") {
        if s.kind != SurfaceKind::P2 {
            c.pos = start;
            return c.err("lines live on p2");
        }
        let a = c.scalar(k)?;
        c.expect(b',')?;
        let b = c.scalar(k)?;
        c.expect(b',')?;
        let g = c.scalar(k)?;
        c.expect(b')')?;
        return SurfaceCurve::line(k, [a, b, g]).map_err(|_| Error::Parse { pos: start, msg: "zero line".into() });
    }
    for (prefix, horizontal) in [("X=", false), ("Y=", true)] {
        if c.eat_str(prefix) {
            if s.kind != SurfaceKind::P1xP1 {
                c.pos = start;
                return c.err("fibers live on p1xp1");
            }
            let p = if c.eat_str("inf") { CurvePoint::Inf } else { CurvePoint::Finite(c.scalar(k)?) };
            return Ok(if horizontal { SurfaceCurve::FiberY(p) } else { SurfaceCurve::FiberX(p) });
        }
    }
    while c.pos < c.src.len() && c.src[c.pos].is_ascii_alphanumeric() {
        c.pos += 1;
    }
    let label = core::str::from_utf8(&c.src[start..c.pos]).expect("ascii");
    match s.curve(label) {
        Some(curve) => Ok(curve),
        None => {
            c.pos = start;
            c.err(format!("unknown curve `{label}` on {}", s.kind.label()))
        }
    }
}

/// Parse a divisor on P^1, e.g. `3[0] - 2[inf] + 1[5]`.
pub fn parse_curve_divisor(field: FieldSpec, text: &str) -> Result<CurveDivisor> {
    let mut c = Cursor::new(text);
    let mut d = CurveDivisor::new();
    if c.eat(b'0') && c.at_end() {
        return Ok(d);
    }
    c.pos = 0;
    let mut first = true;
    while !c.at_end() {
        let sign = if c.eat(b'+') {
            1
        } else if c.eat(b'-') {
            -1
        } else if first {
            1
        } else {
            return c.err("expected `+` or `-`");
        };
        first = false;
        let n = if c.has_digit() { c.unsigned()? } else { 1 };
        c.expect(b'[')?;
        let p = if c.eat_str("inf") { CurvePoint::Inf } else { CurvePoint::Finite(c.scalar(field)?) };
        c.expect(b']')?;
        d.add_at(p, sign * n);
    }
    if first {
        return c.err("empty divisor");
    }
    Ok(d)
}

/// Parse a rational function in `x, y` (the affine coordinates `X, Y`).
pub fn parse_form(field: FieldSpec, text: &str) -> Result<RationalFunction> {
    let mut c = Cursor::new(text);
    let r = form_sum(&mut c, field)?;
    c.finish()?;
    if r.den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(r)
}

fn form_sum(c: &mut Cursor, k: FieldSpec) -> Result<RationalFunction> {
    let neg = c.eat(b'-');
    let mut acc = form_product(c, k)?;
    if neg {
        acc = acc.neg();
    }
    loop {
        if c.eat(b'+') {
            acc = acc.add(&form_product(c, k)?);
        } else if c.eat(b'-') {
            acc = acc.sub(&form_product(c, k)?);
        } else {
            return Ok(acc);
        }
    }
}

fn form_product(c: &mut Cursor, k: FieldSpec) -> Result<RationalFunction> {
    let mut acc = form_power(c, k)?;
    loop {
        if c.eat(b'*') {
            acc = acc.mul(&form_power(c, k)?);
        } else if c.eat(b'/') {
            let pos = c.pos;
            let d = form_power(c, k)?;
            if d.is_zero() {
                return Err(Error::Parse { pos, msg: "division by zero".into() });
            }
            acc = acc.mul(&d.inv()?);
        } else {
            return Ok(acc);
        }
    }
}

fn form_power(c: &mut Cursor, k: FieldSpec) -> Result<RationalFunction> {
    let base = form_atom(c, k)?;
    if c.eat(b'^') {
        let pos = c.pos;
        let e = c.signed()?;
        return base.pow(e).map_err(|_| Error::Parse { pos, msg: "negative power of zero".into() });
    }
    Ok(base)
}

fn form_atom(c: &mut Cursor, k: FieldSpec) -> Result<RationalFunction> {
    match c.peek() {
        Some(b'(') => {
            c.pos += 1;
            let r = form_sum(c, k)?;
            c.expect(b')')?;
            Ok(r)
        }
        Some(b'x' | b'X') => {
            c.pos += 1;
            Ok(RationalFunction::monomial(k.one(), 1, 0))
        }
        Some(b'y' | b'Y') => {
            c.pos += 1;
            Ok(RationalFunction::monomial(k.one(), 0, 1))
        }
        Some(b'-') => {
            c.pos += 1;
            Ok(form_power(c, k)?.neg())
        }
        Some(d) if d.is_ascii_digit() => {
            let v = c.unsigned()?;
            Ok(RationalFunction::constant(k.int(v)))
        }
        _ => c.err("expected `(`, `x`, `y` or a number"),
    }
}

/// Parse a field selector `fp:<p>` or `q`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    if s == "q" {
        return Ok(FieldSpec::Rationals);
    }
    let Some(rest) = s.strip_prefix("fp:") else {
        return Err(Error::Parse { pos: 0, msg: format!("unknown field `{s}` (expected fp:<p> or q)") });
    };
    let p: u64 = rest.parse().map_err(|_| Error::Parse { pos: 3, msg: "expected a prime".to_string() })?;
    FieldSpec::prime(p)
}
