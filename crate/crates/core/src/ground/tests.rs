use super::*;
use crate::lang::{Bindings, Theory};

fn theory(data: &str, program: &str) -> Theory {
    Theory::parse(&[data], &[program], &Bindings::new()).unwrap()
}

fn show(g: &GroundTheory) -> Vec<String> {
    g.clauses
        .iter()
        .map(|c| c.display(&g.atoms).to_string())
        .collect()
}

fn syms(xs: &[&str]) -> Vec<Value> {
    xs.iter().map(|s| Value::from(*s)).collect()
}

fn subst(pairs: &[(&str, Value)]) -> Substitution {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn names(table: &AtomTable, c: &GroundCAtom) -> Vec<String> {
    c.atoms.iter().map(|id| table.atom(*id).to_string()).collect()
}

#[test]
fn worked_example_grounds_to_three_clauses() {
    let t = theory(
        "",
        "q(b,c) -> p(a).\np(X) -> X = a ; q(X,_).\nr(a) ; r(b) ; r(c).",
    );
    // The last clause only forces the constant c into the table.
    let g = ground_theory(&t).unwrap();
    assert_eq!(
        show(&g)[..3],
        [
            "1{q(b,c)}1 => 1{p(a)}1",
            "1{p(b)}1 => 1{q(b,a), q(b,b), q(b,c)}",
            "1{p(c)}1 => 1{q(c,a), q(c,b), q(c,c)}",
        ]
    );
    assert_eq!(g.clauses.len(), 4);
}

#[test]
fn ground_fact_clause() {
    let g = ground_theory(&theory("", "-> p(a).")).unwrap();
    assert_eq!(show(&g), ["T => 1{p(a)}1"]);
}

#[test]
fn closed_world_nonmonotonicity() {
    let ex12 = "data p1/1. data q1/1.\np1(X) -> q1(X).";
    let g = ground_theory(&theory("p1(a0). q1(a0).", ex12)).unwrap();
    assert!(g.clauses.is_empty());
    // Ex3 mentions b0; p1(a0) -> p1(b0) becomes T => F.
    let t = Theory::parse(
        &["p1(a0). q1(a0).", "r1(b0)."],
        &[ex12, "q1(X) -> p1(X).\np1(a0) -> p1(b0)."],
        &Bindings::new(),
    )
    .unwrap();
    let g = ground_theory(&t).unwrap();
    assert_eq!(show(&g), ["T => F"]);
}

#[test]
fn expand_existential_examples() {
    let mut table = AtomTable::default();
    let q = crate::lang::parse_program("-> q(X,_).", &Bindings::new()).unwrap();
    let atom = q.clauses().next().unwrap().consequent[0].atom().clone();
    let c = expand_existential(&atom, &subst(&[("X", "b".into())]), &syms(&["a", "b", "c"]), &mut table).unwrap();
    assert_eq!(names(&table, &c), ["q(b,a)", "q(b,b)", "q(b,c)"]);
    assert_eq!((c.lower, c.upper), (Some(1), None));

    let mut table = AtomTable::default();
    let p = Atom::new("p", vec![Term::Underscore]);
    let c = expand_existential(&p, &Substitution::new(), &syms(&["a"]), &mut table).unwrap();
    assert_eq!(names(&table, &c), ["p(a)"]);

    let mut table = AtomTable::default();
    let vpos = Atom::new("vpos", vec![Term::Underscore, Term::Var("X".into())]);
    let consts = vec!["v1".into(), "v2".into(), Value::Int(1), Value::Int(2)];
    let c = expand_existential(&vpos, &subst(&[("X", "v1".into())]), &consts, &mut table).unwrap();
    let expected: Vec<String> = consts.iter().map(|v| format!("vpos({v},v1)")).collect();
    assert_eq!(names(&table, &c), expected);
}

#[test]
fn predefined_evaluation() {
    let consts: Vec<Value> = (1..=8).map(Value::Int).collect();
    let cmp = |op, l: Term, r: Term| eval_predefined(&Atom::compare(op, l, r), &consts).unwrap();
    let a = || Term::Const("a".into());
    let b = || Term::Const("b".into());
    assert!(cmp(Comparison::Eq, a(), a()));
    assert!(!cmp(Comparison::Eq, b(), a()));
    assert!(cmp(Comparison::Le, Term::Int(2), Term::Int(2)));
    assert!(!cmp(Comparison::Lt, a(), Term::Int(2)));
    assert!(!cmp(Comparison::Ge, a(), Term::Int(2)));
    assert!(!cmp(Comparison::Eq, a(), Term::Int(2)));
    assert!(cmp(Comparison::Ne, a(), Term::Int(2)));
    let plus = |l: Term, r: Term| Term::App(ArithOp::Add, vec![l, r]);
    // 8+1 is not a constant of the theory, so the atom is false
    assert!(!cmp(Comparison::Eq, plus(Term::Int(8), Term::Int(1)), Term::Int(9)));
    assert!(cmp(Comparison::Eq, plus(Term::Int(3), Term::Int(1)), Term::Int(4)));
    // arithmetic on a symbol is a type error
    assert!(!cmp(Comparison::Eq, plus(a(), Term::Int(1)), Term::Int(2)));
    assert_eq!(eval_term(&plus(Term::Int(8), Term::Int(1)), &consts).unwrap(), None);
    let modz = Term::App(ArithOp::Mod, vec![Term::Int(3), Term::Int(0)]);
    assert_eq!(eval_term(&modz, &consts).unwrap(), None);
    let big = Term::App(ArithOp::Mul, vec![Term::Int(i64::MAX), Term::Int(2)]);
    assert!(matches!(eval_term(&big, &consts), Err(GroundError::Overflow { .. })));
}

#[test]
fn arithmetic_outside_table_falsifies_program_atom() {
    let consts: Vec<Value> = (1..=8).map(Value::Int).collect();
    let atom = Atom::new(
        "q",
        vec![
            Term::App(ArithOp::Add, vec![Term::Var("R".into()), Term::Int(1)]),
            Term::Int(3),
        ],
    );
    let s = subst(&[("R", Value::Int(8))]);
    assert_eq!(instantiate_atom(&atom, &s, &consts).unwrap(), None);
    let s = subst(&[("R", Value::Int(2))]);
    assert_eq!(
        instantiate_atom(&atom, &s, &consts).unwrap().unwrap().to_string(),
        "q(3,3)"
    );

    let t = theory("", "p(R) -> q(R + 1).\n-> p(1) ; p(2).");
    let g = ground_theory(&t).unwrap();
    assert_eq!(show(&g), ["1{p(1)}1 => 1{q(2)}1", "1{p(2)}1 => F", "T => 1{p(1)}1 | 1{p(2)}1"]);
}

#[test]
fn instantiate_catom_examples() {
    let prog = |s: &str| {
        let b: Bindings = [("k".to_string(), 3)].into();
        let p = crate::lang::parse_program(s, &b).unwrap();
        let Item::Card(c) = p.clauses().next().unwrap().consequent[0].clone() else {
            panic!()
        };
        c
    };
    let mut table = AtomTable::default();
    let c = instantiate_catom(&prog("{invc(_)} k."), &Substitution::new(), &syms(&["v1", "v2", "v3", "v4"]), &mut table).unwrap();
    assert_eq!((c.lower, c.upper), (None, Some(3)));
    assert_eq!(names(&table, &c), ["invc(v1)", "invc(v2)", "invc(v3)", "invc(v4)"]);

    let mut table = AtomTable::default();
    let c = instantiate_catom(&prog("1 {p(_)} 1."), &Substitution::new(), &syms(&["a"]), &mut table).unwrap();
    assert_eq!(c.display(&table).to_string(), "1{p(a)}1");

    let mut table = AtomTable::default();
    let c = instantiate_catom(&prog("2 {r(X,_)} 2."), &subst(&[("X", "a".into())]), &syms(&["a", "b"]), &mut table).unwrap();
    assert_eq!(c.display(&table).to_string(), "2{r(a,a), r(a,b)}2");
}

#[test]
fn static_catoms_fold() {
    // 0 {..} with slack upper is always true; 3 {..} over two atoms always false
    let g = ground_theory(&theory("", "p(X) -> 0 {q(_)}.\np(X) -> 3 {q(_)}.\nr(a) ; r(b).")).unwrap();
    assert_eq!(show(&g), ["1{p(a)}1 => F", "1{p(b)}1 => F", "T => 1{r(a)}1 | 1{r(b)}1"]);
    let g = ground_theory(&theory("", "2 {q(_)} 1.\nr(a).")).unwrap();
    assert_eq!(show(&g), ["T => F", "T => 1{r(a)}1"]);
}

#[test]
fn negative_bound_is_an_error() {
    let b: Bindings = [("k".to_string(), -1)].into();
    let t = Theory::parse(&[], &["{q(_)} k.\nq(a)."], &b).unwrap();
    assert!(matches!(ground_theory(&t), Err(GroundError::NegativeBound { .. })));
}

#[test]
fn herbrand_base_option_adds_free_atoms() {
    let t = theory("", "p(a) -> q(a).\nr(b).");
    let g = ground_theory_with(&t, GroundOptions { herbrand_base: true }).unwrap();
    let names: Vec<String> = g.atoms.iter().map(|(_, a)| a.to_string()).collect();
    assert_eq!(names, ["p(a)", "q(a)", "r(b)", "p(b)", "q(b)", "r(a)"]);
}

#[test]
fn text_format_round_trip() {
    let t = theory(
        "e(a,b). e(b,c).",
        "e(X,Y) -> c(X) ; c(Y).\n{c(_)} 1.\nc(X) -> 1 {m(X,_)} 2.",
    );
    let g = ground_theory(&t).unwrap();
    let text = write_ground(&g);
    assert!(text.starts_with(&format!("p gnd {} {}\n", g.atoms.len(), g.clauses.len())));
    assert!(text.contains("d e(a,b)\n"));
    let back = read_ground(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(write_ground(&back), text);
    assert_eq!(write_ground(&ground_theory(&t).unwrap()), text);
}

#[test]
fn format_errors_are_located() {
    assert_eq!(read_ground("a 0 p\n"), Err(FormatError::MissingHeader));
    let e = read_ground("p gnd 1 1\na 0 p\nc 1 1 1 4\n").unwrap_err();
    assert!(matches!(e, FormatError::Malformed { line: 3, .. }));
    let e = read_ground("p gnd 2 0\na 0 p\n").unwrap_err();
    assert!(matches!(e, FormatError::CountMismatch { what: "atoms", .. }));
}

#[test]
fn no_data_atoms_reach_the_ground_theory() {
    let t = theory("v(a). v(b). e(a,b).", "e(X,Y) -> s(X) ; s(Y).\nv(X) -> s(X) ; t(X).\ns(X), v(X) -> u.");
    let g = ground_theory(&t).unwrap();
    for (_, a) in g.atoms.iter() {
        assert!(!t.is_data_predicate(&a.predicate), "{a}");
    }
}
