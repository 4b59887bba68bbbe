//! Recursive-descent parser for `.sigma` scenarios, with
//! position-annotated syntax errors.

use crate::ast::*;
use crate::lexer::{lex, Pos, Spanned, SyntaxError, Tok};

pub fn parse_scenario(text: &str) -> Result<Scenario, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, auto_label: 0 };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Scenario { stmts })
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    auto_label: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> Pos {
        self.toks[self.pos].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        let pos = self.here();
        Err(SyntaxError {
            line: pos.line,
            col: pos.col,
            message: format!("expected {}, found {}", expected, self.peek()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if self.peek() == &tok {
            self.bump();
            Ok(())
        } else {
            self.err(&tok.to_string())
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.err("an identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.err(&format!("keyword `{kw}`")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn usize_lit(&mut self) -> Result<usize, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(n) if n >= 0 => {
                self.bump();
                Ok(n as usize)
            }
            _ => self.err("a non-negative integer"),
        }
    }

    fn i64_lit(&mut self) -> Result<i64, SyntaxError> {
        let neg = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => self.err("an integer"),
        }
    }

    fn stmt(&mut self) -> Result<Stmt, SyntaxError> {
        let kw = match self.peek().clone() {
            Tok::Ident(s) => s,
            _ => return self.err("a statement keyword"),
        };
        match kw.as_str() {
            "field" => self.field_stmt(),
            "morphism" => self.morphism_stmt(),
            "pseudofield" => self.pseudofield_stmt(),
            "ring" => self.ring_stmt(),
            "inclusion" => self.inclusion_stmt(),
            "ideal" => self.ideal_stmt(),
            "dsfield" => self.dsfield_stmt(),
            "presentation" => self.presentation_stmt(),
            "kernel" => self.kernel_stmt(),
            "cmd" => self.cmd_stmt(),
            "expect" => self.expect_stmt(),
            other => {
                let pos = self.here();
                Err(SyntaxError {
                    line: pos.line,
                    col: pos.col,
                    message: format!("unknown statement keyword `{other}`"),
                })
            }
        }
    }

    fn field_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("field")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        let expr = match self.peek().clone() {
            Tok::Ident(s) if s == "Q" => {
                self.bump();
                FieldExpr::Rationals
            }
            Tok::Ident(s) if s == "GF" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let p = self.usize_lit()? as u64;
                self.expect(Tok::RParen)?;
                FieldExpr::Galois(p)
            }
            Tok::Ident(s) if s == "algebraic" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let base = self.ident()?;
                self.expect(Tok::Comma)?;
                let gen = self.ident()?;
                self.expect(Tok::Comma)?;
                let minpoly = self.expr()?;
                self.expect(Tok::RParen)?;
                FieldExpr::Algebraic { base, gen, minpoly }
            }
            Tok::Ident(s) if s == "transcendental" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let base = self.ident()?;
                self.expect(Tok::Comma)?;
                let gen = self.ident()?;
                self.expect(Tok::RParen)?;
                FieldExpr::Transcendental { base, gen }
            }
            _ => return self.err("a field expression (Q, GF, algebraic, transcendental)"),
        };
        self.expect(Tok::Semi)?;
        Ok(Stmt::Field { name, expr })
    }

    fn morphism_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("morphism")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("morphism")?;
        self.expect(Tok::LParen)?;
        let source = self.ident()?;
        self.expect(Tok::Comma)?;
        let target = self.ident()?;
        self.expect(Tok::Comma)?;
        let images = self.expr_list()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::Morphism { name, source, target, images })
    }

    fn sigma_ref(&mut self) -> Result<SigmaRef, SyntaxError> {
        let s = self.ident()?;
        if s == "id" {
            Ok(SigmaRef::Id)
        } else {
            Ok(SigmaRef::Named(s))
        }
    }

    fn pseudofield_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("pseudofield")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        let expr = match self.peek().clone() {
            Tok::Ident(s) if s == "pseudofield" => {
                self.bump();
                self.expect(Tok::LParen)?;
                self.expect(Tok::LBracket)?;
                let mut comps = vec![self.ident()?];
                while self.peek() == &Tok::Comma {
                    self.bump();
                    comps.push(self.ident()?);
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::LBracket)?;
                let mut maps = vec![self.sigma_ref()?];
                while self.peek() == &Tok::Comma {
                    self.bump();
                    maps.push(self.sigma_ref()?);
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::RParen)?;
                PseudoExpr::Components { comps, maps }
            }
            Tok::Ident(s) if s == "trivial" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let base = self.ident()?;
                self.expect(Tok::Comma)?;
                let sigma = self.sigma_ref()?;
                self.expect(Tok::Comma)?;
                let copies = self.usize_lit()?;
                self.expect(Tok::RParen)?;
                PseudoExpr::Trivial { base, sigma, copies }
            }
            _ => return self.err("a pseudofield expression (pseudofield, trivial)"),
        };
        self.expect(Tok::Semi)?;
        Ok(Stmt::PseudoField { name, expr })
    }

    fn ring_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("ring")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        let which = self.ident()?;
        match which.as_str() {
            "ring" => {
                self.expect(Tok::LParen)?;
                let field = self.ident()?;
                self.expect(Tok::Comma)?;
                let sigma = self.sigma_ref()?;
                self.expect(Tok::Comma)?;
                let vars = self.ident_list()?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::LBracket)?;
                let mut images = Vec::new();
                loop {
                    if self.at_keyword("none") {
                        self.bump();
                        images.push(None);
                    } else {
                        images.push(Some(self.expr()?));
                    }
                    if self.peek() == &Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Semi)?;
                Ok(Stmt::Ring { name, field, sigma, vars, images })
            }
            "truncation" => {
                self.expect(Tok::LParen)?;
                let field = self.ident()?;
                self.expect(Tok::Comma)?;
                let sigma = self.sigma_ref()?;
                self.expect(Tok::Comma)?;
                let vars = self.ident_list()?;
                self.expect(Tok::Comma)?;
                let cutoff = self.usize_lit()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Semi)?;
                Ok(Stmt::Truncation { name, field, sigma, vars, cutoff })
            }
            _ => self.err("`ring` or `truncation`"),
        }
    }

    fn inclusion_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("inclusion")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("inclusion")?;
        self.expect(Tok::LParen)?;
        let r = self.ident()?;
        self.expect(Tok::Comma)?;
        let s = self.ident()?;
        self.expect(Tok::Comma)?;
        let images = self.expr_list()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::Inclusion { name, r, s, images })
    }

    fn ideal_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("ideal")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("ideal")?;
        self.expect(Tok::LParen)?;
        let ring = self.ident()?;
        self.expect(Tok::Comma)?;
        let gens = self.expr_list()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::Ideal { name, ring, gens })
    }

    fn dsfield_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("dsfield")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("dsfield")?;
        self.expect(Tok::LParen)?;
        let field = self.ident()?;
        self.expect(Tok::Comma)?;
        let deltas = self.expr_list()?;
        self.expect(Tok::Comma)?;
        let sigma = self.sigma_ref()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::DsField { name, field, deltas, sigma })
    }

    fn level_list(&mut self) -> Result<Vec<LevelExpr>, SyntaxError> {
        self.expect(Tok::LBracket)?;
        let mut levels = Vec::new();
        loop {
            if self.at_keyword("trans") {
                self.bump();
                levels.push(LevelExpr::Trans);
            } else if self.at_keyword("alg") {
                self.bump();
                self.expect(Tok::LParen)?;
                levels.push(LevelExpr::Alg(self.expr()?));
                self.expect(Tok::RParen)?;
            } else {
                return self.err("`trans` or `alg(...)`");
            }
            if self.peek() == &Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(levels)
    }

    fn presentation_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("presentation")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("presentation")?;
        self.expect(Tok::LParen)?;
        let field = self.ident()?;
        self.expect(Tok::Comma)?;
        let levels = self.level_list()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::Presentation { name, field, levels })
    }

    fn kernel_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("kernel")?;
        let name = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("kernel")?;
        self.expect(Tok::LParen)?;
        let pseudofield = self.ident()?;
        self.expect(Tok::Comma)?;
        let length = self.usize_lit()?;
        self.expect(Tok::Comma)?;
        let mut components = vec![self.level_list()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            components.push(self.level_list()?);
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::Kernel { name, pseudofield, length, components })
    }

    fn cmd_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("cmd")?;
        let kw = self.ident()?;
        let kind = match kw.as_str() {
            "decompose" => {
                let pf = self.ident()?;
                let samples = if self.at_keyword("samples") {
                    self.bump();
                    self.usize_lit()?
                } else {
                    100
                };
                CmdKind::Decompose { pf, samples }
            }
            "compat" => {
                let l = self.ident()?;
                let lp = self.ident()?;
                self.keyword("over")?;
                let over = self.ident()?;
                let max = self.opt_usize("max")?;
                CmdKind::Compat { l, lp, over, max }
            }
            "lift" => {
                let incl = self.ident()?;
                let ideal = self.ident()?;
                self.keyword("power")?;
                let power = self.usize_lit()?;
                let max = self.opt_usize("max")?;
                CmdKind::Lift { incl, ideal, power, max }
            }
            "witness" => {
                let incl = self.ident()?;
                self.keyword("family")?;
                let family = self.at_list()?;
                let max = self.opt_usize("max")?;
                CmdKind::Witness { incl, family, max }
            }
            "prolong" => CmdKind::Prolong { kernel: self.ident()? },
            "realize" => {
                let kernel = self.ident()?;
                self.keyword("upto")?;
                let upto = self.usize_lit()?;
                CmdKind::Realize { kernel, upto }
            }
            "limitdeg" => {
                let pres = self.ident()?;
                self.keyword("powers")?;
                self.expect(Tok::LBracket)?;
                let mut powers = vec![self.usize_lit()?];
                while self.peek() == &Tok::Comma {
                    self.bump();
                    powers.push(self.usize_lit()?);
                }
                self.expect(Tok::RBracket)?;
                CmdKind::LimitDeg { pres, powers }
            }
            "invclosure" => {
                let ring = self.ident()?;
                let transports = if self.at_keyword("transport") {
                    self.bump();
                    self.at_list()?
                } else {
                    Vec::new()
                };
                let bound = self.opt_usize("bound")?;
                CmdKind::InvClosure { ring, transports, bound }
            }
            "pv" => {
                let ds = self.ident()?;
                self.keyword("rate")?;
                let rate = self.expr()?;
                let lmax = self.opt_usize("max")?;
                let bound = if self.at_keyword("bound") {
                    self.bump();
                    Some(self.i64_lit()?)
                } else {
                    None
                };
                CmdKind::Pv { ds, rate, lmax, bound }
            }
            "probe" => {
                let sub = self.ident()?;
                match sub.as_str() {
                    "product" => {
                        let pf = self.ident()?;
                        let bound = self.opt_i64("bound")?;
                        CmdKind::ProbeProduct { pf, bound }
                    }
                    "ring" => {
                        let ring = self.ident()?;
                        let inverted = if self.at_keyword("invert") {
                            self.bump();
                            self.expr_list()?
                        } else {
                            Vec::new()
                        };
                        let bound = self.opt_i64("bound")?;
                        CmdKind::ProbeRing { ring, inverted, bound }
                    }
                    _ => return self.err("`product` or `ring` after `probe`"),
                }
            }
            other => {
                let pos = self.here();
                return Err(SyntaxError {
                    line: pos.line,
                    col: pos.col,
                    message: format!("unknown command `{other}`"),
                });
            }
        };
        let label = if self.at_keyword("as") {
            self.bump();
            self.ident()?
        } else {
            self.auto_label += 1;
            format!("c{}", self.auto_label)
        };
        self.expect(Tok::Semi)?;
        Ok(Stmt::Cmd { label, kind })
    }

    fn opt_usize(&mut self, kw: &str) -> Result<Option<usize>, SyntaxError> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(Some(self.usize_lit()?))
        } else {
            Ok(None)
        }
    }

    fn opt_i64(&mut self, kw: &str) -> Result<Option<i64>, SyntaxError> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(Some(self.i64_lit()?))
        } else {
            Ok(None)
        }
    }

    /// `[name@int, name@int, ...]`
    fn at_list(&mut self) -> Result<Vec<(String, usize)>, SyntaxError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        loop {
            let name = self.ident()?;
            self.expect(Tok::At)?;
            let d = self.usize_lit()?;
            out.push((name, d));
            if self.peek() == &Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn expect_stmt(&mut self) -> Result<Stmt, SyntaxError> {
        self.keyword("expect")?;
        let label = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut checks = Vec::new();
        while self.peek() != &Tok::RBrace {
            let key = self.ident()?;
            self.expect(Tok::Eq)?;
            let val = self.expval()?;
            self.expect(Tok::Semi)?;
            checks.push((key, val));
        }
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::Expect { label, checks })
    }

    fn expval(&mut self) -> Result<ExpVal, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(ExpVal::Bool(true))
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(ExpVal::Bool(false))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(ExpVal::Str(s))
            }
            Tok::LBracket => {
                self.bump();
                let mut ns = Vec::new();
                if self.peek() != &Tok::RBracket {
                    ns.push(self.i64_lit()?);
                    while self.peek() == &Tok::Comma {
                        self.bump();
                        ns.push(self.i64_lit()?);
                    }
                }
                self.expect(Tok::RBracket)?;
                Ok(ExpVal::IntList(ns))
            }
            Tok::Int(_) | Tok::Minus => Ok(ExpVal::Int(self.i64_lit()?)),
            _ => self.err("an expectation value (int, bool, string or [ints])"),
        }
    }

    fn ident_list(&mut self) -> Result<Vec<String>, SyntaxError> {
        self.expect(Tok::LBracket)?;
        let mut out = vec![self.ident()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            out.push(self.ident()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn expr_list(&mut self) -> Result<Vec<Expr>, SyntaxError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if self.peek() != &Tok::RBracket {
            out.push(self.expr()?);
            while self.peek() == &Tok::Comma {
                self.bump();
                out.push(self.expr()?);
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    // ---- expressions ------------------------------------------------------

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        if self.peek() == &Tok::Minus {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let mut base = self.atom()?;
        if self.peek() == &Tok::Caret {
            self.bump();
            let n = self.usize_lit()?;
            base = Expr::Pow(Box::new(base), n as u32);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) => {
                // `s^3(x)` form
                if s == "s" && self.peek2() == &Tok::Caret {
                    self.bump();
                    self.bump();
                    let j = self.usize_lit()?;
                    self.expect(Tok::LParen)?;
                    let v = self.ident()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::SVar(j, v));
                }
                // `s3(x)` shorthand
                if let Some(j) = shift_prefix(&s) {
                    if self.peek2() == &Tok::LParen {
                        self.bump();
                        self.bump();
                        let v = self.ident()?;
                        self.expect(Tok::RParen)?;
                        return Ok(Expr::SVar(j, v));
                    }
                }
                self.bump();
                Ok(Expr::Var(s))
            }
            _ => self.err("an expression"),
        }
    }
}

fn shift_prefix(s: &str) -> Option<usize> {
    let rest = s.strip_prefix('s')?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::render;

    #[test]
    fn minimal_scenario_parses() {
        let text = "field F = Q;\npseudofield K = trivial(F, id, 3);\ncmd decompose K samples 10 as d1;\n";
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.stmts.len(), 3);
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_scenario("field F = ;\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("expected"));
    }

    #[test]
    fn expressions_round_trip() {
        let exprs = [
            "u*s1(x)^2 - x",
            "1/2",
            "-x^2 + 3*x - 1",
            "(x + 1)^3",
            "y^2 - (u + 1)",
            "s^2(x) + s1(x)",
        ];
        for text in exprs {
            let full = format!("ideal q = ideal(R, [{text}]);\n");
            let s = parse_scenario(&full).unwrap();
            let printed = render(&s);
            let s2 = parse_scenario(&printed).unwrap();
            assert_eq!(s, s2, "round trip failed for `{text}`: rendered `{printed}`");
        }
    }

    #[test]
    fn render_parse_identity() {
        let text = r#"
field Q0 = Q;
field K = algebraic(Q0, r2, y^2 - 2);
ring S = ring(K, id, [x], [-x]);
ring R = ring(K, id, [u], [u]);
inclusion inc = inclusion(R, S, [x^2]);
ideal q2 = ideal(R, [u - 2]);
cmd lift inc q2 power 1 max 4 as lift2;
expect lift2 { lifts_at_1 = 0; lifts_at_2 = 2; sigma_swaps = true; };
"#;
        let s = parse_scenario(text).unwrap();
        let printed = render(&s);
        let s2 = parse_scenario(&printed).unwrap();
        assert_eq!(s, s2);
    }
}
