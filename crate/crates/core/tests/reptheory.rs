use std::sync::Arc;

use twistparity::reptheory::{
    builtin_group, character_table, cyclic, dihedral, gl2f3, sl2f3, Character, Cyclo, FiniteGroup,
};

fn all_builtins() -> Vec<Arc<FiniteGroup>> {
    let mut gs: Vec<Arc<FiniteGroup>> = (1..=12).map(cyclic).collect();
    gs.extend((2..=24).map(dihedral));
    gs.push(sl2f3());
    gs.push(gl2f3());
    gs
}

#[test]
fn tables_are_orthogonal() {
    for g in all_builtins() {
        let t = character_table(&g).unwrap();
        t.check_orthogonality().unwrap_or_else(|e| panic!("{}: {}", g.name(), e));
    }
}

#[test]
fn class_counts() {
    assert_eq!(sl2f3().classes().len(), 7);
    assert_eq!(gl2f3().classes().len(), 8);
    assert_eq!(dihedral(5).classes().len(), 4);
    assert_eq!(sl2f3().order(), 24);
    assert_eq!(gl2f3().order(), 48);
}

#[test]
fn frobenius_schur_indicators() {
    for n in 3..=12 {
        let g = dihedral(n);
        let t = character_table(&g).unwrap();
        for c in t.irreducibles() {
            assert_eq!(c.frobenius_schur().unwrap(), 1, "{} {}", g.name(), c.name());
        }
    }
    let t = character_table(&sl2f3()).unwrap();
    let fs = |n: &str| t.get(n).unwrap().frobenius_schur().unwrap();
    assert_eq!(fs("2dim-real"), -1);
    assert_eq!(fs("3dim"), 1);
    assert_eq!(fs("lambda"), 0);
    assert_eq!(fs("2dim-lambda"), 0);
    let t = character_table(&gl2f3()).unwrap();
    let fs = |n: &str| t.get(n).unwrap().frobenius_schur().unwrap();
    assert_eq!(fs("2dim-s3"), 1);
    assert_eq!(fs("3dim"), 1);
    assert_eq!(fs("2dim-faithful-a"), 0);
    assert_eq!(fs("4dim"), 1);
    let c5 = character_table(&cyclic(5)).unwrap();
    assert_eq!(c5.get("chi1").unwrap().frobenius_schur().unwrap(), 0);
}

#[test]
fn names_and_aliases() {
    let s3 = builtin_group("S3").unwrap();
    let t = character_table(&s3).unwrap();
    assert_eq!(t.get("2dim").unwrap().dim(), 2);
    let d10 = builtin_group("D10").unwrap();
    let t = character_table(&d10).unwrap();
    assert!(t.get("2dim").is_err());
    assert_eq!(t.get("2dim-b").unwrap().dim(), 2);
    assert!(builtin_group("Q8").is_err());
    assert_eq!(builtin_group("C7").unwrap().order(), 7);
}

#[test]
fn determinants() {
    for g in all_builtins() {
        let t = character_table(&g).unwrap();
        for c in t.irreducibles() {
            let d = c.det().unwrap();
            assert_eq!(d.dim(), 1);
        }
    }
    // det of a dihedral 2-dim is the sign character
    let g = dihedral(5);
    let t = character_table(&g).unwrap();
    let det = t.get("2dim-a").unwrap().det().unwrap();
    let sign = t.get("sign").unwrap();
    assert_eq!(det.class_values(), sign.class_values());
    let t = character_table(&gl2f3()).unwrap();
    let d = t.get("2dim-faithful-a").unwrap().det().unwrap();
    assert_eq!(d.class_values(), t.get("det").unwrap().class_values());
    let d = t.get("4dim").unwrap().det().unwrap();
    assert!(d.class_values().iter().all(|v| v.as_integer() == Some(1)));
}

#[test]
fn frobenius_reciprocity_on_subgroups() {
    for g in [dihedral(6), sl2f3(), gl2f3()] {
        let t = character_table(&g).unwrap();
        let subs = g.subgroups();
        for s in subs.iter().filter(|s| s.len() > 1 && s.len() < g.order()).take(12) {
            let (h, emb) = g.subgroup_group(s).unwrap();
            let h = Arc::new(h);
            let triv = Character::trivial(&h);
            let ind = triv.induce(&g, &emb);
            assert_eq!(ind.dim() as usize, g.order() / h.order());
            for chi in t.irreducibles() {
                let lhs = chi.restrict(&h, &emb).multiplicity(&triv).unwrap();
                let rhs = ind.multiplicity(chi).unwrap();
                assert_eq!(lhs, rhs, "{} in {}", chi.name(), g.name());
            }
        }
    }
}

#[test]
fn gl2_restricts_to_sl2() {
    let g = gl2f3();
    let s = sl2f3();
    let emb: Vec<usize> = (0..s.order())
        .map(|a| g.element_by_label(s.label(a)).unwrap())
        .collect();
    let tg = character_table(&g).unwrap();
    let ts = character_table(&s).unwrap();
    let r = tg.get("2dim-faithful-a").unwrap().restrict(&s, &emb);
    assert_eq!(r.class_values(), ts.get("2dim-real").unwrap().class_values());
    let r = tg.get("4dim").unwrap().restrict(&s, &emb);
    let want = ts.get("2dim-lambda").unwrap().add(ts.get("2dim-lambda2").unwrap()).unwrap();
    assert_eq!(r.class_values(), want.class_values());
}

#[test]
fn subgroup_counts() {
    // S3 has 6 subgroups, D8 has 10, SL2(F3) has 15
    assert_eq!(dihedral(3).subgroups().len(), 6);
    assert_eq!(dihedral(4).subgroups().len(), 10);
    assert_eq!(sl2f3().subgroups().len(), 15);
    assert_eq!(gl2f3().subgroups().len(), 55);
}

#[test]
fn cyclotomic_sanity() {
    let z = Cyclo::root(24, 5);
    assert_eq!(z.pow(24).as_integer(), Some(1));
    let (re, im) = (&Cyclo::root(8, 1) + &Cyclo::root(8, 3)).to_complex();
    assert!(re.abs() < 1e-12 && (im - 2f64.sqrt()).abs() < 1e-12);
}
