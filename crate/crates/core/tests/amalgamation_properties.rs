use permlab::amalgamation::{
    check_one_amalgam, lr_amalgamate_av123, lr_amalgamate_closure, one_amalgamate_av1423_1342,
    preserves_lr_minima, search_one_amalgam, AmalgamCertificate, MarkedPermutation,
};
use permlab::classgen::{enumerate_class, ClassSpec};
use permlab::drawing::{draw_av123, Line, LineDrawing};
use permlab::oracle;
use permlab::perm::Permutation;

fn marked(spec: &ClassSpec, max: usize, inner_only: bool) -> Vec<MarkedPermutation> {
    let mut out = Vec::new();
    for n in 1..=max {
        for q in enumerate_class(spec, n).unwrap() {
            for i in 1..=n {
                let m = MarkedPermutation::new(q.clone(), i).unwrap();
                if !(inner_only && m.mark_is_lr_minimum()) {
                    out.push(m);
                }
            }
        }
    }
    out
}

fn fits(cert: &AmalgamCertificate, m1: &MarkedPermutation, m2: &MarkedPermutation) -> bool {
    cert.sigma.len() < m1.perm().len() + m2.perm().len()
}

#[test]
fn two_line_amalgams_are_sound() {
    let av123 = ClassSpec::av(&["123"]).unwrap();
    let inputs = marked(&av123, 5, true);
    for m1 in &inputs {
        for m2 in &inputs {
            let cert = lr_amalgamate_av123(m1, m2).unwrap();
            assert_eq!(check_one_amalgam(&cert, m1, m2, &av123), Ok(()));
            assert!(preserves_lr_minima(&cert, m1, m2));
            assert!(fits(&cert, m1, m2));
        }
    }
}

#[test]
fn closure_amalgams_are_sound() {
    let main = ClassSpec::av(&["1423", "1342"]).unwrap();
    let inputs = marked(&main, 5, true);
    for m1 in &inputs {
        for m2 in inputs.iter().filter(|m| m.perm().len() <= 4) {
            let cert = lr_amalgamate_closure(m1, m2).unwrap();
            assert_eq!(
                check_one_amalgam(&cert, m1, m2, &main),
                Ok(()),
                "{} {}",
                m1.perm(),
                m2.perm()
            );
            assert!(preserves_lr_minima(&cert, m1, m2));
            assert!(fits(&cert, m1, m2));
        }
    }
}

#[test]
fn amalgams_survive_reverse_complement() {
    let main = ClassSpec::av(&["1423", "1342"]).unwrap();
    let mirror = ClassSpec::av(&["2314", "3124"]).unwrap();
    let inputs = marked(&main, 4, false);
    for m1 in &inputs {
        for m2 in &inputs {
            let cert = one_amalgamate_av1423_1342(m1, m2).unwrap();
            assert!(fits(&cert, m1, m2));
            let flipped = cert.reverse_complement();
            let (r1, r2) = (m1.reverse_complement(), m2.reverse_complement());
            assert_eq!(check_one_amalgam(&flipped, &r1, &r2, &mirror), Ok(()));
            let back = AmalgamCertificate::from_json(&cert.to_json()).unwrap();
            assert_eq!(back, cert);
        }
    }
}

#[test]
fn constructions_never_beat_the_oracle() {
    let main = ClassSpec::av(&["1423", "1342"]).unwrap();
    let inputs = marked(&main, 4, false);
    for (k, m1) in inputs.iter().enumerate() {
        // a deterministic thinning keeps the brute-force budget small
        for m2 in inputs.iter().skip(k % 5).step_by(5) {
            let cert = one_amalgamate_av1423_1342(m1, m2).unwrap();
            let brute =
                oracle::brute_min_amalgam(m1.perm(), m1.mark(), m2.perm(), m2.mark(), &main, 7)
                    .unwrap()
                    .expect("the construction found one");
            assert!(brute <= cert.sigma.len());
        }
    }
}

#[test]
fn layered_class_search_succeeds() {
    let av231 = ClassSpec::av(&["231"]).unwrap();
    let inputs = marked(&av231, 4, false);
    for m1 in &inputs {
        for m2 in &inputs {
            let cert = search_one_amalgam(m1, m2, &av231, 8).expect("inflation-closed class");
            assert_eq!(check_one_amalgam(&cert, m1, m2, &av231), Ok(()));
        }
    }
}

#[test]
fn search_finds_self_amalgams() {
    let all = ClassSpec::all();
    for q in oracle::all_perms(4) {
        for i in 1..=4 {
            let m = MarkedPermutation::new(q.clone(), i).unwrap();
            let cert = search_one_amalgam(&m, &m, &all, 4).unwrap();
            assert_eq!(cert.sigma.len(), 4);
            assert_eq!(
                oracle::brute_min_amalgam(&q, i, &q, i, &all, 4).unwrap(),
                Some(4)
            );
        }
    }
}

fn lower_points_are_minima(d: &LineDrawing) -> bool {
    d.points
        .iter()
        .enumerate()
        .all(|(j, p)| p.line == Line::Upper || d.points[..j].iter().all(|q| q.y(d.d) > p.y(d.d)))
}

#[test]
fn drawings_read_back() {
    let av123 = ClassSpec::av(&["123"]).unwrap();
    for n in 0..=8 {
        for q in enumerate_class(&av123, n).unwrap() {
            let d = draw_av123(&q).unwrap();
            assert_eq!(d.read_back().unwrap(), q);
            assert!(lower_points_are_minima(&d));
            assert_eq!(LineDrawing::from_json(&d.to_json()).unwrap(), d);
        }
    }
    for q in oracle::all_perms(6) {
        let blocked = draw_av123(&q).is_err();
        assert_eq!(
            blocked,
            permlab::perm::contains(&Permutation::identity(3), &q)
        );
    }
}
