use cha_core::contfrac::{
    convergents, determinant, determinant_closed_form, enclosure_width_formula, sum_enclosure,
    BBounds,
};
use cha_core::oracle::{certified_error, reference_sum};
use cha_core::rational::{parse_decimal, ten_pow};
use cha_core::{Limits, SeriesParams};

fn params(p: u64, q: u64) -> SeriesParams {
    SeriesParams::new(p, q).unwrap()
}

// 80-decimal truncations of the closed forms.
const QUARTER_PI: &str =
    "0.78539816339744830961566084581987572104929234984377645524373614807695410157155225";
const LN2: &str =
    "0.69314718055994530941723212145817656807550013436025525412068000949339362196969472";
const ONE_MINUS_LN2: &str =
    "0.30685281944005469058276787854182343192449986563974474587931999050660637803030528";

#[test]
fn oracle_matches_closed_forms() {
    let limits = Limits::default();
    for ((p, q), text) in [((2, 1), QUARTER_PI), ((1, 1), LN2), ((1, 2), ONE_MINUS_LN2)] {
        let known = parse_decimal(text).unwrap();
        let r = reference_sum(params(p, q), 75, &limits).unwrap();
        let err = certified_error(&known, &r);
        assert!(err.hi < ten_pow(-74), "({p}, {q}): {}", err.hi);
        assert!(r.enclosure.width() < ten_pow(-75));
    }
}

#[test]
fn determinant_and_b_bounds_grid() {
    for p in 1..=3 {
        for q in 1..=3 {
            let pq = params(p, q);
            for n in [0, 1, 5, 20] {
                for pair in convergents(pq, n, 200, &Limits::default()).unwrap() {
                    let m = pair.m;
                    assert_eq!(
                        determinant(pq, n, m),
                        determinant_closed_form(p, m),
                        "({p},{q}) n={n} m={m}"
                    );
                    let bounds = BBounds::new(pq, n, m);
                    assert!(bounds.admits(&pair.b), "({p},{q}) n={n} m={m}");
                    if let Some(refined) = &bounds.refined_lower {
                        assert!(refined >= &bounds.lower && refined <= &pair.b);
                    }
                }
            }
        }
    }
}

#[test]
fn enclosures_contain_the_sum_at_every_rank() {
    let limits = Limits::default();
    for (p, q) in [(2, 1), (1, 2), (3, 5)] {
        let pq = params(p, q);
        let s = reference_sum(pq, 60, &limits).unwrap().enclosure;
        for n in [0, 5, 50] {
            let mut previous = None;
            for m in 0..40 {
                let e = sum_enclosure(pq, n, m);
                assert!(e.intersects(&s), "({p},{q}) n={n} m={m}");
                assert_eq!(e.width(), enclosure_width_formula(pq, n, m));
                if let Some(prev) = previous.replace(e.width()) {
                    assert!(e.width() < prev, "width must shrink with m");
                }
            }
        }
        let across: Vec<_> = [0, 5, 50]
            .iter()
            .map(|&n| sum_enclosure(pq, n, 3))
            .collect();
        for a in &across {
            for b in &across {
                assert!(a.intersects(b));
            }
        }
    }
}

#[test]
fn enclosures_refine_two_orders_at_a_time() {
    let pq = params(2, 1);
    for n in [0, 7] {
        for m in 0..60 {
            assert!(
                sum_enclosure(pq, n, m + 2).is_subset_of(&sum_enclosure(pq, n, m)),
                "n={n} m={m}"
            );
        }
    }
}

#[test]
fn reduites_interlace() {
    // Even orders approach the remainder from above, odd orders from below.
    let pq = params(1, 1);
    let r: Vec<_> = convergents(pq, 3, 41, &Limits::default())
        .unwrap()
        .map(|c| c.reduite())
        .collect();
    let even: Vec<_> = r.iter().step_by(2).collect();
    let odd: Vec<_> = r.iter().skip(1).step_by(2).collect();
    assert!(even.windows(2).all(|w| w[1] < w[0]));
    assert!(odd.windows(2).all(|w| w[1] > w[0]));
    assert!(odd.last().unwrap() < even.last().unwrap());
}
