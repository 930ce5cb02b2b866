use super::{Substitution, Term};

/// Syntactic matching: the unique `σ` over the variables of `pattern` with
/// `pattern σ == subject`, if there is one.
///
/// Variables of `subject` are treated as constants.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut bindings = std::collections::BTreeMap::<&str, &Term>::new();
    let mut stack = vec![(pattern, subject)];
    while let Some((p, s)) = stack.pop() {
        match p {
            Term::Var(x) => match bindings.get(x.as_str()) {
                Some(&bound) if bound != s => return None,
                Some(_) => {}
                None => {
                    bindings.insert(x, s);
                }
            },
            Term::App(f, pargs) => match s {
                Term::App(g, sargs) if f == g && pargs.len() == sargs.len() => {
                    stack.extend(pargs.iter().zip(sargs.iter()));
                }
                _ => return None,
            },
        }
    }
    Some(bindings.into_iter().map(|(x, t)| (x.to_string(), t.clone())).collect())
}

/// Most general unifier of `s` and `t`. The result is idempotent; between two
/// variables, the one from `t` gets bound.
pub fn unify(s: &Term, t: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    let mut stack = vec![(s.clone(), t.clone())];
    while let Some((a, b)) = stack.pop() {
        let a = a.apply(&sigma);
        let b = b.apply(&sigma);
        if a == b {
            continue;
        }
        match (a, b) {
            (u, Term::Var(x)) | (Term::Var(x), u) => {
                if u.contains_var(&x) {
                    return None;
                }
                let mut single = Substitution::new();
                single.insert(x.clone(), u.clone());
                sigma = sigma.compose(&single);
            }
            (Term::App(f, fargs), Term::App(g, gargs)) => {
                if f != g || fargs.len() != gargs.len() {
                    return None;
                }
                stack.extend(fargs.into_iter().zip(gargs).rev());
            }
        }
    }
    Some(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    const VARS: &[&str] = &["x", "y", "z", "x'"];

    fn t(s: &str) -> Term {
        parse_term(s, VARS).unwrap()
    }

    #[test]
    fn variable_pattern_matches_anything() {
        let s = match_term(&t("x"), &t("•(e, y)")).unwrap();
        assert_eq!(s.get("x"), Some(&t("•(e, y)")));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn match_forced_by_structure() {
        let s = match_term(&t("•(e, x)"), &t("•(e, inv(y))")).unwrap();
        assert_eq!(s.get("x"), Some(&t("inv(y)")));
    }

    #[test]
    fn match_head_clash() {
        assert!(match_term(&t("•(e, x)"), &t("•(inv(y), e)")).is_none());
    }

    #[test]
    fn match_nonlinear_pattern() {
        assert!(match_term(&t("f(x, x)"), &t("f(a, a)")).is_some());
        assert!(match_term(&t("f(x, x)"), &t("f(a, b)")).is_none());
        // subject variables are rigid
        assert!(match_term(&t("f(x, a)"), &t("f(y, y)")).is_none());
    }

    #[test]
    fn unify_decomposes() {
        let s = unify(&t("•(x, y)"), &t("•(e, z)")).unwrap();
        assert_eq!(t("•(x, y)").apply(&s), t("•(e, z)").apply(&s));
        assert_eq!(s.get("x"), Some(&t("e")));
    }

    #[test]
    fn unify_occurs_check() {
        assert!(unify(&t("x"), &t("inv(x)")).is_none());
    }

    #[test]
    fn unify_group_overlap() {
        let s = unify(&t("•(inv(x'), x')"), &t("•(x, y)")).unwrap();
        assert_eq!(s.get("x"), Some(&t("inv(x')")));
        assert_eq!(s.get("y"), Some(&t("x'")));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn unifier_is_idempotent() {
        let s = unify(&t("f(x, g(y), y)"), &t("f(g(z), x, z)")).unwrap();
        for (_, u) in s.iter() {
            assert_eq!(u.apply(&s), *u);
        }
    }
}
