use num_bigint::BigInt;
use proptest::prelude::*;
use qtrep::diagrams::{canonical_decomposition, compose_word, concat, dim_c, enumerate_diagrams, Diagram};
use qtrep::partitions::{bipartitions_up_to, bp};
use qtrep::trep::{block_of, ext1_nonzero, ext_dim, hom_dim_z, socle_mult, tensor_zz};
use qtrep::Bipartition;

fn diagram(p: usize, q: usize, r: usize, pick: usize) -> Diagram {
    let all = enumerate_diagrams(p, q, r);
    all[pick % all.len()].clone()
}

// three composable diagrams with every top row of size ≤ 3
fn chain() -> impl Strategy<Value = (Diagram, Diagram, Diagram)> {
    (0..=3usize, 0..=3usize, any::<usize>(), any::<usize>(), any::<usize>(), any::<[usize; 3]>()).prop_map(
        |(p, q, a, b, c, picks)| {
            let r1 = a % (p.min(q) + 1);
            let d1 = diagram(p, q, r1, picks[0]);
            let (p2, q2) = d1.bottom_shape();
            let r2 = b % (p2.min(q2) + 1);
            let d2 = diagram(p2, q2, r2, picks[1]);
            let (p3, q3) = d2.bottom_shape();
            let r3 = c % (p3.min(q3) + 1);
            (d1, d2, diagram(p3, q3, r3, picks[2]))
        },
    )
}

fn label() -> impl Strategy<Value = Bipartition> {
    let labels = bipartitions_up_to(4);
    (0..labels.len()).prop_map(move |i| labels[i].clone())
}

proptest! {
    #[test]
    fn concat_is_associative((d1, d2, d3) in chain()) {
        let left = concat(&concat(&d1, &d2).unwrap(), &d3).unwrap();
        let right = concat(&d1, &concat(&d2, &d3).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn text_form_round_trips((d, _, _) in chain()) {
        prop_assert_eq!(d.to_string().parse::<Diagram>().unwrap(), d);
    }

    #[test]
    fn decomposition_recomposes((d, _, _) in chain()) {
        let word = canonical_decomposition(&d);
        prop_assert_eq!(compose_word(d.p, d.q, &word).unwrap(), d);
    }

    #[test]
    fn socle_layers_respect_blocks(a in label(), b in label(), r in 0..5usize) {
        let m = socle_mult(&a, &b, r).unwrap();
        if block_of(&a) != block_of(&b) {
            prop_assert!(m.is_zero());
        }
        if !m.is_zero() {
            prop_assert_eq!(a.sizes(), (b.sizes().0 + r, b.sizes().1 + r));
        }
        prop_assert!(m.total >= BigInt::from(0));
    }

    #[test]
    fn ext1_support_matches_layer_one(a in label(), b in label()) {
        let nonzero = ext_dim(1, &a, &b).unwrap().is_positive();
        prop_assert_eq!(nonzero, ext1_nonzero(&a, &b).nonzero);
    }

    #[test]
    fn graded_values_are_exact_totals(a in label(), b in label()) {
        let h = hom_dim_z(&a, &b).unwrap();
        if let Some(g) = &h.graded {
            prop_assert_eq!(g.eval_plus(), h.total.clone());
            prop_assert!(!h.parity_ambiguous);
        }
    }
}

#[test]
fn end_of_z_box_box_matches_diagram_corner() {
    // e(□) ⊗ e(□) cuts T^{1,1} into Z(□,□) ⊕ ΠZ(□,□), so End T^{1,1} has
    // four times the dimension of End Z(□,□)
    let end_t = dim_c(1, 1, 0).eval_plus();
    let end_z = hom_dim_z(&bp(&[1], &[1]), &bp(&[1], &[1])).unwrap();
    assert_eq!(end_t, end_z.total * 4);
}

#[test]
fn tensor_unit_and_symmetry_small() {
    let labels = bipartitions_up_to(2);
    for a in &labels {
        for b in &labels {
            assert_eq!(tensor_zz(a, b).unwrap(), tensor_zz(b, a).unwrap());
        }
        let unit = tensor_zz(&Bipartition::trivial(), a).unwrap();
        assert_eq!(unit.keys().collect::<Vec<_>>(), vec![a]);
    }
}
