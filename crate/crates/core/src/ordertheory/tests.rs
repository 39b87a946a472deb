use super::*;
use crate::matgroup::{enumerate_group, GroupSpec, GroupTable};

fn analyzed(spec: &str) -> (GroupTable, CacTable, OrderTables) {
    let g = enumerate_group(&GroupSpec::parse(spec).unwrap()).unwrap();
    let cac = cac_table(&g);
    let ot = order_tables(&g, &cac).unwrap();
    (g, cac, ot)
}

#[test]
fn cac_basics() {
    let (g, cac, _) = analyzed("G(3,1,2)");
    let id = g.class_of(g.identity());
    assert_eq!(cac.get(id, id, id), 1);
    // cac(X, class of inverses of X, identity) = |X|
    for c in 0..g.num_classes() {
        let inv_class = g.class_of(g.inv(g.class_rep(c)));
        assert_eq!(cac.get(c, inv_class, id), g.classes()[c].size as u64);
        // and pairing with any other class gives zero at the identity
        for y in 0..g.num_classes() {
            if y != inv_class {
                assert_eq!(cac.get(c, y, id), 0);
            }
        }
    }
}

#[test]
fn layering_gives_one_on_reflection_classes() {
    for spec in ["G(3,1,2)", "G(4,2,2)", "G23"] {
        let (g, _, ot) = analyzed(spec);
        for c in 0..g.num_classes() {
            if g.is_reflection_class(c) {
                assert_eq!(ot.length_by_class[c], 1);
            }
        }
    }
}

#[test]
fn layering_matches_bfs_oracle() {
    for spec in ["G(3,1,2)", "G(4,2,2)", "G(3,3,3)", "G(2,1,3)", "G8", "G(6,3,2)"] {
        let (g, _, ot) = analyzed(spec);
        let bfs = bfs_reflection_length(&g, 10_000).unwrap();
        for x in 0..g.order() as u32 {
            assert_eq!(
                bfs[x as usize],
                ot.length_by_class[g.class_of(x)],
                "element {x} of {spec}"
            );
        }
    }
}

#[test]
fn non_reflection_group_is_reported() {
    // the cyclic group generated by a codimension-2 scalar has no reflections
    let i = crate::cyclo::root_of_unity(4, 1);
    let m = crate::cyclo::CycloMatrix::from_rows(vec![
        vec![i.clone(), crate::cyclo::CycloNum::zero(4)],
        vec![crate::cyclo::CycloNum::zero(4), i.clone()],
    ])
    .unwrap();
    let spec = GroupSpec::new(crate::matgroup::GroupKind::Explicit {
        name: "scalar-i".into(),
        dim: 2,
        gens: vec![m],
    });
    let g = enumerate_group(&spec).unwrap();
    assert_eq!(g.order(), 4);
    let cac = cac_table(&g);
    assert!(matches!(
        reflection_length_by_layers(&g, &cac),
        Err(Error::NonReflectionGroup(_))
    ));
    assert!(matches!(
        bfs_reflection_length(&g, 10_000),
        Err(Error::NonReflectionGroup(_))
    ));
}

#[test]
fn bfs_budget() {
    let (g, _, _) = analyzed("G(4,2,2)");
    assert!(matches!(
        bfs_reflection_length(&g, 3),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn identity_below_everything() {
    let (g, _, ot) = analyzed("G(4,2,2)");
    let id = g.class_of(g.identity());
    for c in 0..g.num_classes() {
        assert!(ot.leq_perp[id][c]);
        assert!(ot.leq_ell[id][c]);
    }
}

#[test]
fn reflection_below_det_one_codim_two_diagonal() {
    // in G(4,4,2), diag(z, z^-1) factors into two reflections with
    // codimensions adding, so a reflection class sits below it
    let (g, _, ot) = analyzed("G(4,4,2)");
    let target = crate::monomial::MonomialElt::diagonal(4, vec![1, 3]);
    let idx = g
        .index_of(&crate::matgroup::Elem::Mono(target))
        .expect("diag(z,z^-1) in the table");
    let c = g.class_of(idx);
    assert!((0..g.num_classes())
        .filter(|&x| g.is_reflection_class(x))
        .any(|x| ot.leq_perp[x][c]));
}

#[test]
fn no_reflection_below_m2_class() {
    let (g, _, ot) = analyzed("G(4,2,2)");
    let m2 = crate::monomial::counterexample(crate::monomial::GmpnParams::new(4, 2, 2).unwrap())
        .unwrap();
    let idx = g.index_of(&crate::matgroup::Elem::Mono(m2)).unwrap();
    let c = g.class_of(idx);
    for x in 0..g.num_classes() {
        if g.is_reflection_class(x) {
            assert!(!ot.leq_perp[x][c]);
        }
    }
    // and the M2 class is an atom of codimension two with length three
    assert!(ot.atom_flags_perp[c]);
    assert_eq!(ot.codim_by_class[c], 2);
    assert_eq!(ot.length_by_class[c], 3);
}

#[test]
fn reflection_classes_are_atoms() {
    for spec in ["G(3,1,2)", "G(4,2,2)", "G23", "G25"] {
        let (g, _, ot) = analyzed(spec);
        for c in 0..g.num_classes() {
            if g.is_reflection_class(c) {
                assert!(ot.atom_flags_perp[c], "{spec} class {c}");
            }
        }
    }
}

#[test]
fn nonreflection_atom_counts_for_rank_three_groups() {
    let (g, _, ot) = analyzed("G25");
    let n25 = (0..g.num_classes())
        .filter(|&c| ot.atom_flags_perp[c] && !g.is_reflection_class(c))
        .count();
    assert_eq!(n25, 1);
    assert_eq!(g.num_classes(), 24);

    let (g, _, ot) = analyzed("G24");
    let n24 = (0..g.num_classes())
        .filter(|&c| ot.atom_flags_perp[c] && !g.is_reflection_class(c))
        .count();
    assert_eq!(n24, 2);
    assert_eq!(g.num_classes(), 12);
}

#[test]
fn coincidence_reports() {
    let (g, _, ot) = analyzed("G23");
    let r = coincidence_report(&g, &ot);
    assert_eq!(
        r,
        CoincidenceReport {
            num_length_neq_codim: 0,
            num_nonreflection_atoms: 0,
            max_length: 3,
            coincide: true
        }
    );

    let (g, _, ot) = analyzed("G(3,1,3)");
    let r = coincidence_report(&g, &ot);
    assert!(r.coincide);
    assert_eq!(r.num_length_neq_codim, 0);
    // the breadth-first oracle fixes the maximum length
    let bfs = bfs_reflection_length(&g, 10_000).unwrap();
    assert_eq!(r.max_length, bfs.iter().copied().max().unwrap());

    let (g, _, ot) = analyzed("G(1,1,2)");
    let r = coincidence_report(&g, &ot);
    assert!(r.coincide);
    assert_eq!(g.order(), 2);
}

#[test]
fn covers_match_interval_oracle() {
    // brute-force interval-emptiness oracle over all strict pairs
    for spec in ["G(2,1,2)", "G(4,2,2)", "G(3,1,2)"] {
        let (_, _, ot) = analyzed(spec);
        for (rel, covers) in [(&ot.leq_perp, &ot.covers_perp), (&ot.leq_ell, &ot.covers_ell)] {
            let k = rel.len();
            let mut expected = Vec::new();
            for a in 0..k {
                for b in 0..k {
                    if a == b || !rel[a][b] {
                        continue;
                    }
                    let empty = (0..k).all(|m| m == a || m == b || !(rel[a][m] && rel[m][b]));
                    if empty {
                        expected.push((a, b));
                    }
                }
            }
            assert_eq!(covers, &expected, "{spec}");
        }
    }
}

#[test]
fn chain_poset_covers() {
    let rel = vec![
        vec![true, true, true],
        vec![false, true, true],
        vec![false, false, true],
    ];
    assert_eq!(cover_relations(&rel).unwrap(), vec![(0, 1), (1, 2)]);
}

#[test]
fn poset_axioms_are_enforced() {
    let not_antisym = vec![vec![true, true], vec![true, true]];
    assert!(matches!(
        cover_relations(&not_antisym),
        Err(Error::PosetAxiomViolation(_))
    ));
    let not_transitive = vec![
        vec![true, true, false],
        vec![false, true, true],
        vec![false, false, true],
    ];
    assert!(matches!(
        cover_relations(&not_transitive),
        Err(Error::PosetAxiomViolation(_))
    ));
}

#[test]
fn lemma_reports() {
    let (g, cac, ot) = analyzed("G(3,1,2)");
    let r = verify_section2_lemmas(&g, &ot, &cac);
    assert!(r.is_clean());
    assert_eq!(r.tfae, [true; 4]);

    let (g, cac, ot) = analyzed("G(4,2,2)");
    let r = verify_section2_lemmas(&g, &ot, &cac);
    assert!(r.is_clean());
    assert_eq!(r.tfae, [false; 4]);

    let (g, cac, ot) = analyzed("G23");
    let r = verify_section2_lemmas(&g, &ot, &cac);
    assert!(r.is_clean());
    assert_eq!(r.tfae, [true; 4]);
}

#[test]
fn monotonicity_of_relations() {
    for spec in ["G(4,2,2)", "G(3,3,3)", "G8"] {
        let (_, _, ot) = analyzed(spec);
        let k = ot.leq_perp.len();
        for a in 0..k {
            for c in 0..k {
                if ot.leq_perp[a][c] {
                    assert!(ot.codim_by_class[a] <= ot.codim_by_class[c]);
                }
                if ot.leq_ell[a][c] {
                    assert!(ot.length_by_class[a] <= ot.length_by_class[c]);
                }
            }
        }
    }
}

#[test]
fn atom_factorizations_exist_with_codims_adding() {
    for spec in ["G(4,2,2)", "G(3,3,3)", "G(3,1,2)"] {
        let (g, _, ot) = analyzed(spec);
        for x in 0..g.order() as u32 {
            let f = atom_factorization(&g, &ot, x).expect("factorization exists");
            let mut prod = g.identity();
            let mut codim_sum = 0;
            for &a in &f {
                prod = g.mul(prod, a);
                codim_sum += g.codim_of_element(a);
            }
            assert_eq!(prod, x);
            assert_eq!(codim_sum, g.codim_of_element(x));
        }
    }
}

#[test]
fn g8_paper_element_not_a_product_of_two_reflections() {
    // the sum of cac(X, Y, C) over reflection classes X, Y vanishes at the
    // class of the codim-2, length-3 element
    let (g, cac, ot) = analyzed("G8");
    let witness = (0..g.num_classes())
        .find(|&c| ot.codim_by_class[c] == 2 && ot.length_by_class[c] == 3)
        .expect("codim-2 length-3 class exists in G8");
    let mut total = 0;
    for x in 0..g.num_classes() {
        for y in 0..g.num_classes() {
            if g.is_reflection_class(x) && g.is_reflection_class(y) {
                total += cac.get(x, y, witness);
            }
        }
    }
    assert_eq!(total, 0);
}

#[test]
fn dot_export_shape() {
    let (g, _, ot) = analyzed("G(2,1,2)");
    assert_eq!(g.num_classes(), 5);
    let dot = export::dot_poset(&g, &ot, export::PosetKind::Perp);
    assert_eq!(dot.matches("label=").count(), 5);
    assert!(dot.starts_with("digraph"));
    let json = export::poset_json(&g, &ot);
    assert_eq!(json.classes.len(), 5);
    assert_eq!(json.leq_perp.len(), 5);
}
