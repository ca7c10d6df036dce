use sc_continuous::sc_decide_continuous;
use sc_generators::*;
use std::time::Instant;

fn far(a: sc_geometry::Point2, b: sc_geometry::Point2, d: f64) -> bool {
    a.dist(b) > d * (1.0 + 1e-12)
}

#[test]
fn far_vertex_pairs_are_declared_antipodes() {
    for bits in [0u64, 0b111, 0b1011_0110_1101] {
        let (n, w) = if bits > 7 { (2, 2) } else { (1, 1) };
        let g = gen_3ov(&ThreeOVInput::from_bits(n, w, bits)).unwrap();
        let t = &g.instance.t;
        let declared: std::collections::HashSet<_> = g.antipodes.iter().copied().collect();
        for a in g.t1_len..t.len() {
            for b in 0..g.t1_len {
                if far(t.vertex(a), t.vertex(b), g.params.d) {
                    assert!(declared.contains(&(a, b)), "({a}, {b})");
                }
            }
        }
    }
}

#[test]
fn calibrated_references_have_length_ell() {
    for (n, w, bits) in [(1, 1, 5u64), (2, 2, 0xabcde), (3, 2, 0x3_1234_5678)] {
        let g = gen_3ov(&ThreeOVInput::from_bits(n, w, bits)).unwrap();
        assert_eq!(g.references.len(), n * n);
        for r in g.calibration_residuals() {
            assert!(r < 1e-9 * g.params.ell, "{r}");
        }
        assert!(g.params.ell > 40.0 * g.params.r_prime);
    }
}

#[test]
fn margin_is_below_every_vertex_gap() {
    let g = gen_3ov(&ThreeOVInput::from_bits(2, 2, 0x5a5a5)).unwrap();
    let t = &g.instance.t;
    let d = g.params.d;
    for a in g.t1_len..t.len() {
        for b in 0..g.t1_len {
            let gap = (t.vertex(a).dist(t.vertex(b)) - d).abs();
            assert!(gap <= 1e-9 * d || gap >= g.margin.slack);
        }
    }
    assert!(g.margin.slack > 0.0);
}

#[test]
fn construction_is_deterministic() {
    let input = ThreeOVInput::from_bits(2, 2, 0x777);
    assert_eq!(gen_3ov(&input).unwrap().instance, gen_3ov(&input).unwrap().instance);
}

#[test]
fn orthogonal_tiny_inputs_are_yes() {
    for bits in 0..7u64 {
        let input = ThreeOVInput::from_bits(1, 1, bits);
        assert!(input.orthogonal_triple().is_some());
        let g = gen_3ov(&input).unwrap();
        let dec = sc_decide_continuous(&g.instance);
        assert!(dec.yes, "bits {bits:03b}");
        assert!(sc_oracles::sc_witness_frechet_ok(&g.instance, dec.witness.as_ref().unwrap()));
    }
}

/// The all-ones input has no orthogonal triple, yet the generated curve
/// holds a cluster: a reference starting before `G⁺_{1,1}` and ending before
/// `D⁺_{2n+3}`, with every interval confirmed by Alt–Godau.
#[test]
fn all_ones_tiny_input_still_clusters() {
    let input = ThreeOVInput::from_bits(1, 1, 0b111);
    assert!(input.orthogonal_triple().is_none());
    let g = gen_3ov(&input).unwrap();
    let clock = Instant::now();
    let dec = sc_decide_continuous(&g.instance);
    assert!(clock.elapsed().as_secs() < 60);
    let w = dec.witness.expect("cluster");
    assert!(sc_oracles::sc_witness_frechet_ok(&g.instance, &w));
    let (s, t) = w.reference;
    let first_g_plus = g.t1_len as f64 + 3.0;
    assert!(s < first_g_plus && t < g.instance.t.len() as f64);
}
