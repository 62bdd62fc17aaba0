use flag_pieces::analysis::{certify, Counter};
use flag_pieces::coxeter::build_weyl;
use flag_pieces::flags::flag_total;
use flag_pieces::groups::{unipotent_partitions, Variant};
use proptest::prelude::*;

fn types() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "A3", "B2", "C2"])
}

fn primes() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_partition_the_flag_variety(t in types(), q in primes(), pick in any::<prop::sample::Index>(), twisted in any::<bool>()) {
        let label = t.parse().unwrap();
        let group = build_weyl(label).unwrap();
        let classes = unipotent_partitions(label).unwrap();
        let class = &classes[pick.index(classes.len())];
        let variant = if twisted && class.component_order() > 1 { Variant::Twisted } else { Variant::Standard };
        let cv = Counter::new(1).unipotent(&group, q, &[(class, variant)]).unwrap().remove(0);
        prop_assert_eq!(cv.total(), flag_total(&group, q));
        let parallel = Counter::new(3).unipotent(&group, q, &[(class, variant)]).unwrap().remove(0);
        prop_assert_eq!(&parallel, &cv);
        let profile = certify(&group, &cv).unwrap();
        prop_assert_eq!(profile.len(), group.classes().len());
    }
}
