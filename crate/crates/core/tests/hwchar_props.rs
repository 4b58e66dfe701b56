use mckay::exactfield::parse_rational;
use mckay::hwchar::drinfeld_for_framing;
use mckay::{
    drinfeld_polynomials, freudenthal, weight_of_lagrangian, weylkac_oracle, CartanData, CycNumber,
    DimVector, GroupSpec, McKayData, MultiplicityTable,
};
use proptest::prelude::*;

fn cartan(spec: GroupSpec) -> CartanData {
    McKayData::compute(spec).unwrap().cartan
}

fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// m(mu) = m(s_i mu) whenever both weights sit inside the window.
fn assert_weyl_invariant(table: &MultiplicityTable, w: &[i64], cd: &CartanData) {
    for (v, m) in table.sorted_entries() {
        let v = v.entries();
        let cv = cd.apply_cartan(v);
        for i in 0..cd.vertex_count {
            let mut image = v.to_vec();
            image[i] += w[i] - cv[i];
            if image[i] < 0 || height(&image) > table.depth as i64 {
                continue;
            }
            assert_eq!(table.get(&image), m, "v = {v:?}, i = {i}");
        }
    }
}

#[test]
fn basic_representation_of_a1_is_given_by_partition_numbers() {
    let cd = cartan(GroupSpec::Cyclic(2));
    let table = freudenthal(&[1, 0], &cd, 12).unwrap();
    // multiplicity of Lambda_0 - k delta is p(k)
    let p = [1, 1, 2, 3, 5, 7, 11];
    for (k, &pk) in p.iter().enumerate() {
        let k = k as i64;
        assert_eq!(table.get(&[k, k]), pk, "k = {k}");
    }
    // Lambda_0 + j alpha_1 - j^2 delta is an extremal weight
    for j in -2i64..=2 {
        let v = [j * j, j * j - j];
        assert_eq!(table.get(&v), 1, "j = {j}");
    }
}

#[test]
fn hand_values_for_cyclic_two() {
    let cd = cartan(GroupSpec::Cyclic(2));
    let table = freudenthal(&[1, 0], &cd, 2).unwrap();
    assert_eq!(table.get(&[1, 0]), 1);
    assert_eq!(table.get(&[1, 1]), 1);
    assert_eq!(table.get(&[0, 1]), 0);
    let only_top = freudenthal(&[1, 0], &cd, 0).unwrap();
    assert_eq!(only_top.sorted_entries().len(), 1);
}

#[test]
fn oracle_agrees_on_the_reference_examples() {
    let c2 = cartan(GroupSpec::Cyclic(2));
    assert_eq!(freudenthal(&[1, 0], &c2, 4).unwrap(), weylkac_oracle(&[1, 0], &c2, 4).unwrap());
    let c3 = cartan(GroupSpec::Cyclic(3));
    assert_eq!(
        freudenthal(&[1, 1, 0], &c3, 3).unwrap(),
        weylkac_oracle(&[1, 1, 0], &c3, 3).unwrap()
    );
}

#[test]
fn multiplicities_are_weyl_invariant() {
    for (spec, w, depth) in [
        (GroupSpec::Cyclic(3), vec![1, 0, 0], 12),
        (GroupSpec::Cyclic(4), vec![2, 0, 1, 0], 9),
        (GroupSpec::BinaryDihedral(2), vec![1, 0, 0, 0, 0], 10),
        (GroupSpec::BinaryTetrahedral, vec![1, 0, 0, 0, 0, 0, 0], 14),
    ] {
        let cd = cartan(spec);
        let table = freudenthal(&w, &cd, depth).unwrap();
        assert_weyl_invariant(&table, &w, &cd);
    }
}

#[test]
fn weight_strings_are_unbroken() {
    // the weights in mu + Z alpha_i form one unbroken string
    let cd = cartan(GroupSpec::Cyclic(3));
    let w = [1, 1, 0];
    let depth = 9;
    let table = freudenthal(&w, &cd, depth).unwrap();
    for (v, _) in table.sorted_entries() {
        for i in 0..3 {
            let mut seen_gap = false;
            let mut step = v.entries().to_vec();
            loop {
                step[i] += 1;
                if height(&step) > depth as i64 {
                    break;
                }
                let present = table.get(&step) > 0;
                assert!(!(seen_gap && present), "string broken at {step:?}");
                if !present {
                    seen_gap = true;
                }
            }
        }
    }
}

#[test]
fn invalid_inputs() {
    let cd = cartan(GroupSpec::Cyclic(2));
    assert!(freudenthal(&[0, 0], &cd, 3).is_err());
    assert!(freudenthal(&[1, 0, 0], &cd, 3).is_err());
    assert!(freudenthal(&[-1, 2], &cd, 3).is_err());
    assert!(weylkac_oracle(&[0, 0], &cd, 3).is_err());
}

#[test]
fn lagrangian_weight() {
    let mu = weight_of_lagrangian(&DimVector::new(vec![1, 1]).unwrap(), &[1, 0]).unwrap();
    assert_eq!(mu.framing, vec![1, 0]);
    assert_eq!(mu.drop, vec![1, 1]);
}

#[test]
fn drinfeld_polynomials_have_unit_constant_term() {
    let q = |s: &str| CycNumber::from_rational(parse_rational(s).unwrap());
    let i = CycNumber::root_of_unity(4, 1).unwrap();
    let data = drinfeld_polynomials(&[vec![q("2"), q("1/3")], vec![], vec![i.clone(), i.conj()]]).unwrap();
    assert_eq!(data.framing(), vec![2, 0, 2]);
    assert_eq!(data.polynomials[0], vec![q("1"), q("-7/3"), q("2/3")]);
    assert_eq!(data.polynomials[1], vec![q("1")]);
    // (1 - iu)(1 + iu) = 1 + u^2
    assert_eq!(data.polynomials[2], vec![q("1"), q("0"), q("1")]);
    assert!(drinfeld_polynomials(&[vec![q("0")]]).is_err());
    assert!(drinfeld_for_framing(&[1, 1], &[vec![q("2")], vec![]]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn freudenthal_matches_oracle_on_small_weights(
        family in 0usize..3,
        raw in prop::collection::vec(0i64..=2, 5),
        depth in 0usize..=6,
    ) {
        let spec = [GroupSpec::Cyclic(3), GroupSpec::Cyclic(4), GroupSpec::BinaryDihedral(2)][family];
        let cd = cartan(spec);
        let mut w: Vec<i64> = raw.into_iter().take(cd.vertex_count).collect();
        w.resize(cd.vertex_count, 0);
        prop_assume!(w.iter().any(|&x| x > 0));
        let f = freudenthal(&w, &cd, depth).unwrap();
        prop_assert_eq!(&f, &weylkac_oracle(&w, &cd, depth).unwrap());
        assert_weyl_invariant(&f, &w, &cd);
    }
}
