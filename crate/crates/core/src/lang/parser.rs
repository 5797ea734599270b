//! Recursive-descent parser for data files and program files.
//!
//! ```text
//! data_file  ::= { fact }
//! fact       ::= IDENT [ "(" constant { "," constant } ")" ] "."
//! constant   ::= IDENT | [ "-" ] INT
//!
//! program    ::= { statement }
//! statement  ::= "data" IDENT "/" INT "."
//!              | [ antecedent ] "->" [ consequent ] "."
//!              | consequent "."
//! antecedent ::= "T" | item { "," item }
//! consequent ::= "F" | item { ";" item }
//! item       ::= atom | comparison | catom
//! atom       ::= IDENT [ "(" term { "," term } ")" ]
//! comparison ::= term ( "=" | "!=" | "<" | "<=" | ">" | ">=" ) term
//! catom      ::= [ bound ] "{" atom "}" [ bound ]
//! bound      ::= [ "-" ] INT | IDENT            (IDENT resolved through bindings)
//! term       ::= sum
//! sum        ::= product { ( "+" | "-" ) product }
//! product    ::= unary { ( "*" | "mod" ) unary }
//! unary      ::= "-" INT | primary
//! primary    ::= INT | VAR | "_" | IDENT | "abs" "(" term ")" | "(" term ")"
//! ```

use std::collections::HashMap;

use super::ast::*;
use super::lexer::{tokenize, Pos, Tok};
use super::{Bindings, DataSet, LangError};

pub(crate) struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, LangError> {
        Ok(Cursor {
            toks: tokenize(text)?,
            at: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    pub(crate) fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.at + ahead).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<(), LangError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> LangError {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    pub(crate) fn error(&self, msg: String) -> LangError {
        let Pos { line, col } = self.pos();
        LangError::Syntax { line, col, msg }
    }
}

/// Intermediate form: a term, or something that may still turn out to be
/// an atom (an identifier with or without arguments).
#[derive(Debug)]
pub(crate) enum Expr {
    Term(Term),
    Name(String),
    Call(String, Vec<Expr>),
}

pub(crate) struct ExprParser<'a> {
    pub(crate) bindings: &'a Bindings,
}

impl ExprParser<'_> {
    pub(crate) fn into_term(&self, e: Expr, cur: &Cursor) -> Result<Term, LangError> {
        match e {
            Expr::Term(t) => Ok(t),
            Expr::Name(n) => Ok(match self.bindings.get(&n) {
                Some(&value) => Term::Param { name: n, value },
                None => Term::Const(n),
            }),
            Expr::Call(name, _) => Err(cur.error(format!(
                "function symbol `{name}` is not allowed; only + - * mod abs are predefined"
            ))),
        }
    }

    fn operand(&self, e: Expr, cur: &Cursor) -> Result<Term, LangError> {
        let t = self.into_term(e, cur)?;
        if t.has_underscore() {
            return Err(cur.error("`_` cannot be an arithmetic operand".into()));
        }
        Ok(t)
    }

    pub(crate) fn expr(&self, cur: &mut Cursor) -> Result<Expr, LangError> {
        let mut lhs = self.product(cur)?;
        loop {
            let op = match cur.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(lhs),
            };
            cur.bump();
            let rhs = self.product(cur)?;
            let (l, r) = (self.operand(lhs, cur)?, self.operand(rhs, cur)?);
            lhs = Expr::Term(Term::App(op, vec![l, r]));
        }
    }

    fn product(&self, cur: &mut Cursor) -> Result<Expr, LangError> {
        let mut lhs = self.unary(cur)?;
        loop {
            let op = match cur.peek() {
                Tok::Star => ArithOp::Mul,
                Tok::Ident(s) if s == "mod" => ArithOp::Mod,
                _ => return Ok(lhs),
            };
            cur.bump();
            let rhs = self.unary(cur)?;
            let (l, r) = (self.operand(lhs, cur)?, self.operand(rhs, cur)?);
            lhs = Expr::Term(Term::App(op, vec![l, r]));
        }
    }

    fn unary(&self, cur: &mut Cursor) -> Result<Expr, LangError> {
        if cur.eat(&Tok::Minus) {
            return match cur.bump() {
                Tok::Int(v) => Ok(Expr::Term(Term::Int(-v))),
                _ => Err(cur.error("unary `-` applies only to integer literals".into())),
            };
        }
        self.primary(cur)
    }

    fn primary(&self, cur: &mut Cursor) -> Result<Expr, LangError> {
        match cur.peek().clone() {
            Tok::Int(v) => {
                cur.bump();
                Ok(Expr::Term(Term::Int(v)))
            }
            Tok::Var(v) => {
                cur.bump();
                Ok(Expr::Term(Term::Var(v)))
            }
            Tok::Underscore => {
                cur.bump();
                Ok(Expr::Term(Term::Underscore))
            }
            Tok::LParen => {
                cur.bump();
                let e = self.expr(cur)?;
                cur.expect(&Tok::RParen)?;
                Ok(Expr::Term(self.operand(e, cur)?))
            }
            Tok::Ident(name) if name == "abs" && *cur.peek_at(1) == Tok::LParen => {
                cur.bump();
                cur.bump();
                let e = self.expr(cur)?;
                cur.expect(&Tok::RParen)?;
                Ok(Expr::Term(Term::App(ArithOp::Abs, vec![self.operand(e, cur)?])))
            }
            Tok::Ident(name) => {
                cur.bump();
                if !cur.eat(&Tok::LParen) {
                    return Ok(Expr::Name(name));
                }
                let mut args = vec![self.expr(cur)?];
                while cur.eat(&Tok::Comma) {
                    args.push(self.expr(cur)?);
                }
                cur.expect(&Tok::RParen)?;
                Ok(Expr::Call(name, args))
            }
            _ => Err(cur.unexpected("a term")),
        }
    }

    /// Turns a parsed expression into an ordinary atom, if it has that shape.
    pub(crate) fn into_atom(&self, e: Expr, cur: &Cursor) -> Result<Atom, LangError> {
        match e {
            Expr::Name(n) => Ok(Atom::new(n, vec![])),
            Expr::Call(n, args) => {
                let args = args
                    .into_iter()
                    .map(|a| self.into_term(a, cur))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Atom::new(n, args))
            }
            Expr::Term(t) => Err(cur.error(format!("expected an atom, found term `{t}`"))),
        }
    }
}

enum Member {
    Item(Item),
    Truth(bool),
}

struct ProgramParser<'a> {
    cur: Cursor,
    exprs: ExprParser<'a>,
}

impl ProgramParser<'_> {
    fn bound(&self, e: Expr) -> Result<Bound, LangError> {
        match e {
            Expr::Term(Term::Int(v)) => Ok(Bound::Lit(v)),
            Expr::Name(name) => match self.exprs.bindings.get(&name) {
                Some(&value) => Ok(Bound::Param { name, value }),
                None => {
                    let Pos { line, col } = self.cur.pos();
                    Err(LangError::UnknownBound { name, line, col })
                }
            },
            _ => Err(self
                .cur
                .error("cardinality bounds must be integer literals or bound names".into())),
        }
    }

    fn catom(&mut self, lower: Option<Bound>) -> Result<CAtom, LangError> {
        self.cur.expect(&Tok::LBrace)?;
        let e = self.exprs.expr(&mut self.cur)?;
        let inner = self.exprs.into_atom(e, &self.cur)?;
        self.cur.expect(&Tok::RBrace)?;
        let upper = match self.cur.peek() {
            Tok::Int(_) | Tok::Ident(_) | Tok::Minus => {
                let e = self.exprs.expr(&mut self.cur)?;
                Some(self.bound(e)?)
            }
            _ => None,
        };
        if lower.is_none() && upper.is_none() {
            return Err(self.cur.error(format!(
                "cardinality atom over `{}` needs a lower or an upper bound",
                inner.predicate
            )));
        }
        Ok(CAtom {
            lower,
            inner,
            upper,
        })
    }

    fn member(&mut self) -> Result<Member, LangError> {
        if *self.cur.peek() == Tok::LBrace {
            return Ok(Member::Item(Item::Card(self.catom(None)?)));
        }
        let e = self.exprs.expr(&mut self.cur)?;
        match self.cur.peek().clone() {
            Tok::Cmp(sym) => {
                self.cur.bump();
                let op = Comparison::from_symbol(sym).expect("lexer emits known comparisons");
                let rhs = self.exprs.expr(&mut self.cur)?;
                let lhs = self.exprs.into_term(e, &self.cur)?;
                let rhs = self.exprs.into_term(rhs, &self.cur)?;
                if lhs.has_underscore() || rhs.has_underscore() {
                    return Err(self
                        .cur
                        .error("`_` cannot appear in a predefined comparison".into()));
                }
                Ok(Member::Item(Item::Atom(Atom::compare(op, lhs, rhs))))
            }
            Tok::LBrace => {
                let lower = self.bound(e)?;
                Ok(Member::Item(Item::Card(self.catom(Some(lower))?)))
            }
            _ => match e {
                Expr::Term(Term::Var(v)) if v == "T" => Ok(Member::Truth(true)),
                Expr::Term(Term::Var(v)) if v == "F" => Ok(Member::Truth(false)),
                e => Ok(Member::Item(Item::Atom(self.exprs.into_atom(e, &self.cur)?))),
            },
        }
    }

    /// Parses members separated by `,` or `;`, returning them with the
    /// separators seen.
    fn members(&mut self) -> Result<(Vec<Member>, Vec<Tok>), LangError> {
        let mut items = vec![self.member()?];
        let mut seps = Vec::new();
        while matches!(self.cur.peek(), Tok::Comma | Tok::Semi) {
            seps.push(self.cur.bump());
            items.push(self.member()?);
        }
        Ok((items, seps))
    }

    fn side(&self, members: Vec<Member>, antecedent: bool) -> Result<Vec<Item>, LangError> {
        let (allowed, name) = if antecedent { (true, "T") } else { (false, "F") };
        let only = members.len() == 1;
        let mut out = Vec::new();
        for m in members {
            match m {
                Member::Truth(b) if b == allowed && only => {}
                Member::Truth(_) => {
                    return Err(self.cur.error(format!(
                        "`{name}` is the only truth constant allowed here, and only on its own"
                    )))
                }
                Member::Item(it) => out.push(it),
            }
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<Statement, LangError> {
        if let (Tok::Ident(kw), Tok::Ident(_), Tok::Slash) =
            (self.cur.peek(), self.cur.peek_at(1), self.cur.peek_at(2))
        {
            if kw == "data" {
                self.cur.bump();
                let Tok::Ident(predicate) = self.cur.bump() else {
                    unreachable!()
                };
                self.cur.bump();
                let Tok::Int(arity) = self.cur.bump() else {
                    return Err(self.cur.error("expected an arity after `/`".into()));
                };
                self.cur.expect(&Tok::Dot)?;
                return Ok(Statement::DataDecl {
                    predicate,
                    arity: arity as usize,
                });
            }
        }

        let start = self.cur.pos();
        let clause = if self.cur.eat(&Tok::Arrow) {
            let consequent = self.consequent()?;
            ExtendedClause::new(vec![], consequent)
        } else {
            let (members, seps) = self.members()?;
            if self.cur.eat(&Tok::Arrow) {
                if seps.iter().any(|s| *s != Tok::Comma) {
                    return Err(self.cur.error("antecedent members are separated by `,`".into()));
                }
                let antecedent = self.side(members, true)?;
                let consequent = self.consequent()?;
                ExtendedClause::new(antecedent, consequent)
            } else {
                if seps.iter().any(|s| *s != Tok::Semi) {
                    return Err(self.cur.error(
                        "a clause without `->` is a disjunction; separate members with `;`".into(),
                    ));
                }
                ExtendedClause::new(vec![], self.side(members, false)?)
            }
        };
        self.cur.expect(&Tok::Dot)?;

        for item in &clause.antecedent {
            if let Item::Atom(a) = item {
                if a.has_underscore() {
                    return Err(LangError::UnderscoreInAntecedent {
                        atom: a.to_string(),
                        line: start.line,
                    });
                }
            }
        }
        Ok(Statement::Clause(clause))
    }

    fn consequent(&mut self) -> Result<Vec<Item>, LangError> {
        if *self.cur.peek() == Tok::Dot {
            return Ok(vec![]);
        }
        let (members, seps) = self.members()?;
        if seps.iter().any(|s| *s != Tok::Semi) {
            return Err(self.cur.error("consequent members are separated by `;`".into()));
        }
        self.side(members, false)
    }
}

/// Parses a program file. Symbolic bounds and symbolic constants are
/// resolved through `bindings`; a bound name without a binding is an error.
///
/// Atom kinds are provisional: everything that is not a comparison is marked
/// as a program atom, except predicates declared with `data p/n.` in this
/// text. [`super::Theory::new`] settles kinds against the data files.
pub fn parse_program(text: &str, bindings: &Bindings) -> Result<Program, LangError> {
    let mut p = ProgramParser {
        cur: Cursor::new(text)?,
        exprs: ExprParser { bindings },
    };
    let mut statements = Vec::new();
    while *p.cur.peek() != Tok::Eof {
        statements.push(p.statement()?);
    }
    let mut program = Program { statements };
    let declared: Vec<String> = program.data_decls().map(|(p, _)| p.to_string()).collect();
    for s in &mut program.statements {
        if let Statement::Clause(c) = s {
            for item in c.antecedent.iter_mut().chain(c.consequent.iter_mut()) {
                let a = item.atom_mut();
                if a.kind == AtomKind::Program && declared.contains(&a.predicate) {
                    a.kind = AtomKind::Data;
                }
            }
        }
    }
    Ok(program)
}

/// Parses a data file: ground facts `pred(c1,...,cn).`.
pub fn parse_data(text: &str) -> Result<DataSet, LangError> {
    let mut cur = Cursor::new(text)?;
    let mut data = DataSet::default();
    let mut arities: HashMap<String, usize> = HashMap::new();
    while *cur.peek() != Tok::Eof {
        let Tok::Ident(predicate) = cur.bump() else {
            return Err(cur.unexpected("a predicate name"));
        };
        let mut args = Vec::new();
        if cur.eat(&Tok::LParen) {
            loop {
                let pos = cur.pos();
                let v = match cur.bump() {
                    Tok::Ident(s) => Value::Sym(s),
                    Tok::Int(i) => Value::Int(i),
                    Tok::Minus => match cur.bump() {
                        Tok::Int(i) => Value::Int(-i),
                        _ => return Err(cur.error("expected an integer after `-`".into())),
                    },
                    Tok::Var(var) => {
                        return Err(LangError::VariableInFact {
                            var,
                            line: pos.line,
                            col: pos.col,
                        })
                    }
                    Tok::Underscore => {
                        return Err(LangError::VariableInFact {
                            var: "_".into(),
                            line: pos.line,
                            col: pos.col,
                        })
                    }
                    _ => return Err(LangError::Syntax {
                        line: pos.line,
                        col: pos.col,
                        msg: "expected a constant".into(),
                    }),
                };
                args.push(v);
                if !cur.eat(&Tok::Comma) {
                    break;
                }
            }
            cur.expect(&Tok::RParen)?;
        }
        cur.expect(&Tok::Dot)?;
        match arities.get(&predicate) {
            Some(&a) if a != args.len() => {
                return Err(LangError::ArityConflict {
                    predicate,
                    first: a,
                    second: args.len(),
                })
            }
            Some(_) => {}
            None => {
                arities.insert(predicate.clone(), args.len());
            }
        }
        data.insert(GroundAtom { predicate, args });
    }
    Ok(data)
}
