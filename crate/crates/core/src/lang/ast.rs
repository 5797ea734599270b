use std::fmt;

/// A ground constant: a symbol or a signed integer.
///
/// Symbols order before integers; symbols compare by name, integers
/// numerically. This is the order of the constant table used by the
/// grounder when it enumerates substitutions and underscore expansions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Sym(String),
    Int(i64),
}

impl Value {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            Value::Sym(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Sym(s) => f.write_str(s),
            Value::Int(i) => write!(f, "{i}"),
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Sym(s.to_string())
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Mod,
    Abs,
}

impl ArithOp {
    pub fn arity(self) -> usize {
        match self {
            ArithOp::Abs => 1,
            _ => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Mod => "mod",
            ArithOp::Abs => "abs",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul | ArithOp::Mod => 2,
            ArithOp::Abs => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Const(String),
    Int(i64),
    /// A symbolic constant resolved from an external binding. Prints as its
    /// name, evaluates as its value.
    Param { name: String, value: i64 },
    Var(String),
    Underscore,
    App(ArithOp, Vec<Term>),
}

impl Term {
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) | Term::Int(_) | Term::Param { .. } => true,
            Term::Var(_) | Term::Underscore => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn has_underscore(&self) -> bool {
        match self {
            Term::Underscore => true,
            Term::App(_, args) => args.iter().any(Term::has_underscore),
            _ => false,
        }
    }

    /// Visits variable names in left-to-right order (with repeats).
    pub fn for_each_var<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            Term::Var(v) => f(v),
            Term::App(_, args) => args.iter().for_each(|a| a.for_each_var(f)),
            _ => {}
        }
    }

    /// Visits every constant that occurs literally in the term.
    pub fn for_each_constant(&self, f: &mut impl FnMut(Value)) {
        match self {
            Term::Const(s) => f(Value::Sym(s.clone())),
            Term::Int(i) => f(Value::Int(*i)),
            Term::Param { value, .. } => f(Value::Int(*value)),
            Term::App(_, args) => args.iter().for_each(|a| a.for_each_constant(f)),
            Term::Var(_) | Term::Underscore => {}
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        match self {
            Term::Const(s) => f.write_str(s),
            Term::Int(i) => write!(f, "{i}"),
            Term::Param { name, .. } => f.write_str(name),
            Term::Var(v) => f.write_str(v),
            Term::Underscore => f.write_str("_"),
            Term::App(ArithOp::Abs, args) => {
                f.write_str("abs(")?;
                args[0].fmt_prec(f, 0, false)?;
                f.write_str(")")
            }
            Term::App(op, args) => {
                let prec = op.precedence();
                let paren = prec < parent || (right && prec == parent);
                if paren {
                    f.write_str("(")?;
                }
                args[0].fmt_prec(f, prec, false)?;
                write!(f, " {} ", op.symbol())?;
                args[1].fmt_prec(f, prec, true)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Comparison {
    pub const ALL: [Comparison; 6] = [
        Comparison::Eq,
        Comparison::Ne,
        Comparison::Lt,
        Comparison::Le,
        Comparison::Gt,
        Comparison::Ge,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Eq => "=",
            Comparison::Ne => "!=",
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Gt => ">",
            Comparison::Ge => ">=",
        }
    }

    /// The comparison that holds exactly when `self` does not.
    pub fn negate(self) -> Self {
        match self {
            Comparison::Eq => Comparison::Ne,
            Comparison::Ne => Comparison::Eq,
            Comparison::Lt => Comparison::Ge,
            Comparison::Le => Comparison::Gt,
            Comparison::Gt => Comparison::Le,
            Comparison::Ge => Comparison::Lt,
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.symbol() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Data,
    Program,
    Predefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
    pub kind: AtomKind,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
            kind: AtomKind::Program,
        }
    }

    pub fn compare(op: Comparison, lhs: Term, rhs: Term) -> Self {
        Atom {
            predicate: op.symbol().to_string(),
            args: vec![lhs, rhs],
            kind: AtomKind::Predefined,
        }
    }

    pub fn comparison(&self) -> Option<Comparison> {
        match self.kind {
            AtomKind::Predefined => Comparison::from_symbol(&self.predicate),
            _ => None,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn has_underscore(&self) -> bool {
        self.args.iter().any(Term::has_underscore)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(op) = self.comparison() {
            return write!(f, "{} {} {}", self.args[0], op.symbol(), self.args[1]);
        }
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A cardinality bound: an integer literal or a name bound externally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Lit(i64),
    Param { name: String, value: i64 },
}

impl Bound {
    pub fn value(&self) -> i64 {
        match self {
            Bound::Lit(v) | Bound::Param { value: v, .. } => *v,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Lit(v) => write!(f, "{v}"),
            Bound::Param { name, .. } => f.write_str(name),
        }
    }
}

/// `m { p(X,_,Y) } n`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CAtom {
    pub lower: Option<Bound>,
    pub inner: Atom,
    pub upper: Option<Bound>,
}

impl fmt::Display for CAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(lo) = &self.lower {
            write!(f, "{lo} ")?;
        }
        write!(f, "{{{}}}", self.inner)?;
        if let Some(hi) = &self.upper {
            write!(f, " {hi}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Item {
    Atom(Atom),
    Card(CAtom),
}

impl Item {
    pub fn atom(&self) -> &Atom {
        match self {
            Item::Atom(a) => a,
            Item::Card(c) => &c.inner,
        }
    }

    pub(crate) fn atom_mut(&mut self) -> &mut Atom {
        match self {
            Item::Atom(a) => a,
            Item::Card(c) => &mut c.inner,
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Atom(a) => a.fmt(f),
            Item::Card(c) => c.fmt(f),
        }
    }
}

/// `A1, ..., As -> B1 ; ... ; Bt`, universally quantified.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExtendedClause {
    pub antecedent: Vec<Item>,
    pub consequent: Vec<Item>,
}

impl ExtendedClause {
    pub fn new(antecedent: Vec<Item>, consequent: Vec<Item>) -> Self {
        ExtendedClause {
            antecedent,
            consequent,
        }
    }

    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.antecedent.iter().chain(&self.consequent)
    }

    /// Distinct variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        let mut vars: Vec<&str> = Vec::new();
        for item in self.items() {
            for t in &item.atom().args {
                t.for_each_var(&mut |v| {
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                });
            }
        }
        vars
    }
}

impl fmt::Display for ExtendedClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, items: &[Item], sep: &str) -> fmt::Result {
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{it}")?;
            }
            Ok(())
        }
        match (self.antecedent.is_empty(), self.consequent.is_empty()) {
            (true, true) => f.write_str("T -> F."),
            (true, false) => {
                join(f, &self.consequent, " ; ")?;
                f.write_str(".")
            }
            (false, empty_consequent) => {
                join(f, &self.antecedent, ", ")?;
                f.write_str(" -> ")?;
                if empty_consequent {
                    f.write_str("F")?;
                } else {
                    join(f, &self.consequent, " ; ")?;
                }
                f.write_str(".")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Statement {
    /// `data p/n.`
    DataDecl { predicate: String, arity: usize },
    Clause(ExtendedClause),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::DataDecl { predicate, arity } => write!(f, "data {predicate}/{arity}."),
            Statement::Clause(c) => c.fmt(f),
        }
    }
}

/// A program file: clauses and data declarations in source order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub statements: Vec<Statement>,
}

impl Program {
    pub fn clauses(&self) -> impl Iterator<Item = &ExtendedClause> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Clause(c) => Some(c),
            Statement::DataDecl { .. } => None,
        })
    }

    pub fn data_decls(&self) -> impl Iterator<Item = (&str, usize)> {
        self.statements.iter().filter_map(|s| match s {
            Statement::DataDecl { predicate, arity } => Some((predicate.as_str(), *arity)),
            Statement::Clause(_) => None,
        })
    }

    pub fn extend(&mut self, other: Program) {
        self.statements.extend(other.statements);
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A variable-free atom over constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<Value>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: Vec<Value>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args,
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
