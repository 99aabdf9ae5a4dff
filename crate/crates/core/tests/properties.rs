use proptest::prelude::*;
use vogel_core::configs::{canonical_form, enumerate_n3, find_coloring, isomorphic, ConfigurationTable};
use vogel_core::identity::{check_on_line, check_on_plane, LineParam};
use vogel_core::qsearch::perm::Perm;
use vogel_core::rational::{fmt_rational, parse_rational, rat};
use vogel_core::vogelplane::{distinguished_lines, Perm3};
use vogel_core::{Basis, FactorProduct, LinearForm, PlaneObject, ProjPoint};

const PAPPUS: &str = "123 456 789 147 258 369 159 267 348";

fn small() -> impl Strategy<Value = i64> {
    -20i64..=20
}

fn triple() -> impl Strategy<Value = [i64; 3]> {
    [small(), small(), small()].prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
}

fn perm_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn point_round_trip(c in triple()) {
        let p = ProjPoint::from_ints(c, Basis::Unprimed).unwrap();
        prop_assert_eq!(p.to_primed().unwrap().to_unprimed().unwrap(), p.clone());
        let q = ProjPoint::from_ints(c, Basis::Primed).unwrap();
        prop_assert_eq!(q.to_unprimed().unwrap().to_primed().unwrap(), q);
    }

    #[test]
    fn incidence_survives_coordinate_change(p in triple(), l in triple()) {
        let p = ProjPoint::from_ints(p, Basis::Unprimed).unwrap();
        let f = LinearForm::from_ints(l, Basis::Unprimed).unwrap();
        prop_assert_eq!(f.eval(&p), f.to_primed().unwrap().eval(&p.to_primed().unwrap()));
    }

    #[test]
    fn action_is_a_group_action(l in triple(), a in 0usize..6, b in 0usize..6) {
        let all = Perm3::all();
        let (g, h) = (all[a], all[b]);
        prop_assert!(all.contains(&g.compose(&h)));
        let f = LinearForm::from_ints(l, Basis::Primed).unwrap();
        prop_assert!(f.act(&h).act(&g).same_line(&f.act(&g.compose(&h))));
        prop_assert!(f.act(&g).act(&g.inverse()).same_line(&f));
    }

    #[test]
    fn twelve_lines_permuted_among_themselves(a in 0usize..6) {
        let g = Perm3::all()[a];
        let lines: Vec<LinearForm> = distinguished_lines(Basis::Primed).into_iter().map(|l| l.form).collect();
        for l in &lines {
            let img = l.act(&g);
            prop_assert!(lines.iter().any(|m| m.same_line(&img)));
        }
    }

    #[test]
    fn rational_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }

    #[test]
    fn perm_inverse_and_text(images in perm_of(7)) {
        let p = Perm::new(images).unwrap();
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(Perm::parse(&p.to_string(), 7).unwrap(), p);
    }

    #[test]
    fn canonical_form_ignores_labels(perm in perm_of(9), order in perm_of(9)) {
        let t = ConfigurationTable::parse_columns(PAPPUS).unwrap();
        let relabeled = t.relabeled(&perm.iter().map(|x| x + 1).collect::<Vec<_>>(), &order);
        prop_assert!(relabeled.is_valid());
        prop_assert_eq!(canonical_form(&relabeled), canonical_form(&t));
        prop_assert!(isomorphic(&relabeled, &t));
    }

    #[test]
    fn coloring_found_under_relabeling(perm in perm_of(9), order in perm_of(9)) {
        let t = ConfigurationTable::parse_columns(PAPPUS).unwrap();
        let relabeled = t.relabeled(&perm.iter().map(|x| x + 1).collect::<Vec<_>>(), &order);
        let c = find_coloring(&relabeled, 3).unwrap().expect("Pappus is colorable");
        prop_assert!(c.validate(&relabeled).is_ok());
    }

    #[test]
    fn sign_matched_products_are_one(
        forms in prop::collection::vec(triple(), 1..=6),
        flips in prop::collection::vec(any::<bool>(), 6),
        shuffle in perm_of(6),
    ) {
        let k = forms.len();
        let num: Vec<LinearForm> = forms.iter().map(|&c| LinearForm::from_ints(c, Basis::Primed).unwrap()).collect();
        let mut flips = flips[..k].to_vec();
        if flips.iter().filter(|&&f| f).count() % 2 == 1 {
            flips[0] = !flips[0];
        }
        let order: Vec<usize> = shuffle.into_iter().filter(|&i| i < k).collect();
        let den: Vec<LinearForm> = order.iter().map(|&i| if flips[i] { num[i].neg() } else { num[i].clone() }).collect();
        let q = FactorProduct::new(true, Basis::Primed, num, den).unwrap();
        prop_assert!(check_on_plane(&q, 7).is_one());
    }

    #[test]
    fn odd_sign_count_gives_minus_one(forms in prop::collection::vec(triple(), 1..=6)) {
        let num: Vec<LinearForm> = forms.iter().map(|&c| LinearForm::from_ints(c, Basis::Primed).unwrap()).collect();
        let mut den = num.clone();
        den[0] = den[0].neg();
        let q = FactorProduct::new(true, Basis::Primed, num, den).unwrap();
        let line = LinearForm::primed([1, 0, 0]);
        let lp = LineParam::new(&line);
        prop_assume!(q.num().iter().all(|f| !lp.restrict_form(f).is_zero()));
        let r = check_on_line(&q, &line, 7);
        prop_assert!(!r.is_one());
    }
}

#[test]
fn enumeration_classes_are_pairwise_non_isomorphic() {
    for n in 7..=9 {
        let tables = enumerate_n3(n).unwrap();
        for (i, a) in tables.iter().enumerate() {
            assert!(a.is_valid());
            for b in &tables[i + 1..] {
                assert!(!isomorphic(a, b));
            }
        }
    }
}
