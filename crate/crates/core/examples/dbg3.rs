use symknot::band::*;
use symknot::invariants;

fn base_events(extra_twists: usize, sign: i8) -> FlatBandDiagram {
    let mut evs = vec![CoreEvent::SingPass { id: 1, role: Role::Clasp, branch_sign: 1 }];
    for _ in 0..extra_twists {
        evs.push(CoreEvent::HalfTwist { sign });
    }
    evs.extend([
        CoreEvent::SingPass { id: 2, role: Role::Through, branch_sign: -1 },
        CoreEvent::SingPass { id: 1, role: Role::Through, branch_sign: -1 },
        CoreEvent::SingPass { id: 2, role: Role::Clasp, branch_sign: 1 },
    ]);
    FlatBandDiagram { events: evs }
}

fn main() {
    for k in [2usize] {
        for sign in [1i8] {
            println!("== block size {k}, sign {sign:+}");
            for n in 0..=8 {
                let bd = base_events(k * n, sign);
                if validate_flat(&bd).is_err() {
                    println!("  n={n}: invalid");
                    continue;
                }
                match boundary_knot(&bd) {
                    Ok(b) => {
                        let det = invariants::determinant(&b).unwrap();
                        let p = invariants::alexander_polynomial(&b).unwrap();
                        let sq = (1..=det).any(|x| x * x == det);
                        println!(
                            "  n={n}: det {det} (odd square {sq}) alex {:?}",
                            p.coefficients
                        );
                    }
                    Err(e) => println!("  n={n}: {e}"),
                }
            }
        }
    }
}
