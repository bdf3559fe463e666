//! Regenerate the bundled recurrence fixtures from scratch.
//!
//! Guesses the three pure 3D recurrences from an oracle table, verifies them
//! as a system on the cube K=8, produces diagonal data through the verified
//! system out to n=150, guesses the diagonal recurrence, checks it, and
//! writes the four JSON files. Takes a few minutes on one core; run as
//!
//! ```text
//! cargo run --release -p geode --example gen_fixtures [-- <output-dir>]
//! ```

use std::path::PathBuf;
use std::time::Instant;

use geode::guesser::{guess, AnsatzSpec, GuessConfig};
use geode::index::MultiIndex;
use geode::oracle::{geode_table, GeodeTable};
use geode::recurrence::{eval_diagonal, Direction, RecurrenceSystem};
use geode::verifier::verify_window;

fn main() {
    let out_dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "fixtures".to_string()),
    );
    std::fs::create_dir_all(&out_dir).expect("create output dir");
    let config = GuessConfig::default();

    let t0 = Instant::now();
    let table = geode_table(30, 3).expect("oracle table");
    eprintln!("oracle table total<=30: {} points in {:?}", table.len(), t0.elapsed());

    let mut recs = Vec::new();
    for (dir, degree) in [(1usize, 11u32), (2, 14), (3, 17)] {
        let t = Instant::now();
        let report = guess(
            &table,
            AnsatzSpec {
                num_vars: 3,
                direction: Direction::Coordinate(dir),
                order: 2,
                degree,
            },
            &config,
        );
        assert!(report.found(), "direction {dir}: {:?}", report.status);
        let rec = report.best().unwrap().clone();
        eprintln!(
            "direction {dir}: found degrees {:?} with {} primes in {:?}",
            rec.degree_report(),
            report.primes_used.len(),
            t.elapsed()
        );
        let path = out_dir.join(format!("geode3_dir{dir}.json"));
        std::fs::write(&path, rec.to_json()).expect("write fixture");
        recs.push(rec);
    }

    let t = Instant::now();
    let mut sys = RecurrenceSystem::new(recs, 2).expect("system");
    let report = verify_window(&mut sys, 8).expect("window verification");
    assert!(report.passed(), "{}", report.to_json());
    eprintln!("system verified on K=8 in {:?}", t.elapsed());

    let t = Instant::now();
    let diag_pairs: Vec<(Vec<u32>, _)> = (0..=150u32)
        .map(|n| {
            let v = sys
                .eval_pure(&MultiIndex::diagonal(n, 3))
                .expect("diagonal value")
                .value;
            (vec![n], v)
        })
        .collect();
    let diag_data = GeodeTable::from_pairs(1, diag_pairs);
    eprintln!("diagonal data to n=150 in {:?}", t.elapsed());

    let t = Instant::now();
    let report = guess(
        &diag_data,
        AnsatzSpec {
            num_vars: 3,
            direction: Direction::Diagonal,
            order: 2,
            degree: 35,
        },
        &config,
    );
    assert!(report.found(), "diagonal: {:?}", report.status);
    let diag = report.best().unwrap().clone();
    eprintln!(
        "diagonal: found degrees {:?} with {} primes in {:?}",
        diag.degree_report(),
        report.primes_used.len(),
        t.elapsed()
    );

    // sanity before writing: forward evaluation against the oracle data
    let init = vec![
        (1u32, diag_data.get(&[1]).unwrap().clone()),
        (2u32, diag_data.get(&[2]).unwrap().clone()),
    ];
    for n in [3u32, 10, 50, 150] {
        let got = eval_diagonal(&diag, n, &init, Some(&sys)).expect("diag eval").value;
        assert_eq!(&got, diag_data.get(&[n]).unwrap(), "diagonal check at n={n}");
    }
    std::fs::write(out_dir.join("geode3_diag.json"), diag.to_json()).expect("write fixture");
    eprintln!("fixtures written to {} in {:?} total", out_dir.display(), t0.elapsed());
}
