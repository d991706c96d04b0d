//! Parser for the text rendering of space expressions.
//!
//! Grammar, loosely:
//!
//! ```text
//! expr    := operand (" x " operand)* | operand (" v " operand)*
//! operand := "Omega^" k operand | "Sigma^" k operand | "(" expr ")" | atom
//! atom    := S^n | CP^2 | SCP2^k | TC(b,t;v mod d) | TC(b,t;name) | Z'..'(n)
//!          | X(n;t) | Map*(expr, expr) | G_c(expr) | G_c(expr; group) | group
//! ```
//!
//! `x` and `v` never mix without parentheses. A gauge factor without a group
//! is only accepted as a product factor whose siblings name a single group.

use gaugekit::arith::CyclicElem;
use gaugekit::expr::{implicit_group, Attach, MooreKind, SpaceExpr};
use gaugekit::{Error, Result, StructureGroup};

pub fn parse_expr(s: &str) -> Result<SpaceExpr> {
    let mut p = Parser { src: s, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// A parsed operand; a gauge atom may still be waiting for its group.
enum Operand {
    Done(SpaceExpr),
    Gauge { base: SpaceExpr, class: String },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error(&self, msg: &str) -> Error {
        Error::invalid(format!(
            "cannot parse `{}` at byte {}: {msg}",
            self.src, self.pos
        ))
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    fn small(&mut self) -> Result<u32> {
        u32::try_from(self.number()?).map_err(|_| self.error("number out of range"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(u8::is_ascii_alphanumeric)
            .count();
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    /// An infix operator: `x` or `v` surrounded by whitespace.
    fn infix(&mut self) -> Option<char> {
        let r = self.rest();
        let trimmed = r.trim_start();
        if trimmed.len() == r.len() {
            return None;
        }
        let mut chars = trimmed.chars();
        let op = chars.next().filter(|c| *c == 'x' || *c == 'v')?;
        if !chars.next().is_some_and(char::is_whitespace) {
            return None;
        }
        self.pos = self.src.len() - trimmed.len() + 1;
        Some(op)
    }

    fn expr(&mut self) -> Result<SpaceExpr> {
        let mut items = vec![self.operand()?];
        let mut op = None;
        while let Some(c) = self.infix() {
            if op.is_some_and(|o| o != c) {
                return Err(self.error("`x` and `v` need parentheses to mix"));
            }
            op = Some(c);
            items.push(self.operand()?);
        }
        match op {
            None => self.finish(items.pop().expect("one operand"), &[]),
            Some('v') => {
                let xs = items
                    .into_iter()
                    .map(|o| self.finish(o, &[]))
                    .collect::<Result<_>>()?;
                Ok(SpaceExpr::Wedge(xs))
            }
            Some(_) => {
                let done: Vec<Option<SpaceExpr>> = items
                    .iter()
                    .map(|o| match o {
                        Operand::Done(e) => Some(e.clone()),
                        Operand::Gauge { .. } => None,
                    })
                    .collect();
                let mut xs = Vec::with_capacity(items.len());
                for (i, o) in items.into_iter().enumerate() {
                    let others: Vec<&SpaceExpr> = done
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .filter_map(|(_, e)| e.as_ref())
                        .collect();
                    xs.push(self.finish(o, &others)?);
                }
                Ok(SpaceExpr::Product(xs))
            }
        }
    }

    fn finish(&self, o: Operand, siblings: &[&SpaceExpr]) -> Result<SpaceExpr> {
        match o {
            Operand::Done(e) => Ok(e),
            Operand::Gauge { base, class } => {
                let group = implicit_group(siblings)
                    .ok_or_else(|| self.error("gauge group must be named, e.g. `G_k(S^4; E6)`"))?;
                Ok(SpaceExpr::gauge(base, group, &class))
            }
        }
    }

    fn closed_operand(&mut self) -> Result<SpaceExpr> {
        let o = self.operand()?;
        self.finish(o, &[])
    }

    fn operand(&mut self) -> Result<Operand> {
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(Operand::Done(e));
        }
        if self.eat("Omega^") {
            let k = self.small()?;
            return Ok(Operand::Done(SpaceExpr::loops(k, self.closed_operand()?)));
        }
        if self.eat("Sigma^") {
            let k = self.small()?;
            return Ok(Operand::Done(SpaceExpr::suspend(k, self.closed_operand()?)));
        }
        if self.eat("G_") {
            let class = self.ident()?.to_string();
            self.expect("(")?;
            let base = self.expr()?;
            if self.eat(";") {
                let group = self.group()?;
                self.expect(")")?;
                return Ok(Operand::Done(SpaceExpr::gauge(base, group, &class)));
            }
            self.expect(")")?;
            return Ok(Operand::Gauge { base, class });
        }
        self.atom().map(Operand::Done)
    }

    fn group(&mut self) -> Result<StructureGroup> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        if (name == "Sp" || name == "Spin") && self.rest().starts_with('(') {
            self.expect("(")?;
            self.number()?;
            self.expect(")")?;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("unknown structure group"))
    }

    fn atom(&mut self) -> Result<SpaceExpr> {
        if self.eat("SCP2^") {
            return Ok(SpaceExpr::SuspCP2(self.small()?));
        }
        if self.eat("CP^2") {
            return Ok(SpaceExpr::SuspCP2(0));
        }
        if self.eat("S^") {
            return Ok(SpaceExpr::Sphere(self.small()?));
        }
        if self.eat("TC(") {
            let bottom = self.small()?;
            self.expect(",")?;
            let top = self.small()?;
            self.expect(";")?;
            self.skip_ws();
            let attach = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                let v = self.number()?;
                self.expect("mod")?;
                let d = self.number()?;
                let c = CyclicElem::checked(v as i64, d)?;
                Attach::Class(c)
            } else {
                Attach::Named(self.balanced_name()?)
            };
            self.expect(")")?;
            return Ok(SpaceExpr::TwoCell {
                bottom,
                top,
                attach,
            });
        }
        if self.eat("X(") {
            let n = self.small()?;
            self.expect(";")?;
            let t = self.number()? as usize;
            self.expect(")")?;
            return Ok(SpaceExpr::Cofibre { n, t });
        }
        if self.eat("Map*(") {
            let domain = self.expr()?;
            self.expect(",")?;
            let codomain = self.expr()?;
            self.expect(")")?;
            return Ok(SpaceExpr::map(domain, codomain));
        }
        if self.eat("Z") {
            let primes = self.rest().bytes().take_while(|&b| b == b'\'').count();
            let kind = *MooreKind::ALL
                .get(primes)
                .ok_or_else(|| self.error("too many primes on Z"))?;
            self.pos += primes;
            self.expect("(")?;
            let n = self.small()?;
            self.expect(")")?;
            return Ok(SpaceExpr::Moore { kind, n });
        }
        Ok(SpaceExpr::LieGroup(self.group()?))
    }

    /// A class name such as `J(xi)`, up to the `)` closing the enclosing `TC(`.
    fn balanced_name(&mut self) -> Result<String> {
        let mut depth = 0usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    let name = self.rest()[..i].trim().to_string();
                    if name.is_empty() {
                        return Err(self.error("empty attaching class"));
                    }
                    self.pos += i;
                    return Ok(name);
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        Err(self.error("unclosed `TC(`"))
    }
}
