use proptest::prelude::*;

use sabmsm::curve::OpCounters;
use sabmsm::curves;
use sabmsm::msm::{msm_naive, msm_pippenger, MsmConfig, Reduction};
use sabmsm::sim::{simulate, write_sim_csv, SimConfig, SIM_CSV_HEADER};
use sabmsm::vectors::{
    format_vectors, generate_vectors, parse_vectors, read_vectors, write_bench_csv, write_vectors, BenchRow,
    VectorError, BENCH_CSV_HEADER,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_round_trip(curve in 0usize..3, m in 1usize..20, seed in any::<u64>(), with_result in any::<bool>()) {
        let cv = [curves::toy(), curves::bn128(), curves::bls12_381()][curve];
        let mut vs = generate_vectors(cv, m, seed);
        if with_result {
            vs.expected = Some(vs.points[0]);
        }
        let text = format_vectors(&vs).unwrap();
        let back = parse_vectors(&text).unwrap();
        prop_assert!(back == vs);
        prop_assert_eq!(format_vectors(&back).unwrap(), text);
    }

    #[test]
    fn config_text_round_trip(s in 1usize..=4, l in 1u64..1000, m in 0u64..1_000_000, seed in any::<u64>()) {
        let cfg = SimConfig { bam_count: s, uda_latency: l, msm_size: m, seed, ..Default::default() };
        prop_assert_eq!(SimConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }
}

#[test]
fn reloaded_vectors_give_same_result() {
    let cv = curves::bn128();
    let mut vs = generate_vectors(cv, 1000, 7);
    let mut c = OpCounters::default();
    let naive = msm_naive(&vs.scalars, &vs.points, cv, &mut c).unwrap();
    vs.expected = Some(cv.to_affine(&naive));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.txt");
    write_vectors(&vs, &path).unwrap();
    let back = read_vectors(&path).unwrap();
    assert!(back == vs);
    let pip = msm_pippenger(&back.scalars, &back.points, cv, &MsmConfig::default(), &mut c).unwrap();
    assert!(cv.points_equal(&pip, &cv.to_jacobian(&back.expected.unwrap())));
}

#[test]
fn generation_depends_only_on_seed() {
    let cv = curves::bls12_381();
    assert!(generate_vectors(cv, 8, 3) == generate_vectors(cv, 8, 3));
    assert!(generate_vectors(cv, 8, 3) != generate_vectors(cv, 8, 4));
    let all_on_curve = generate_vectors(cv, 8, 3).points.iter().all(|p| cv.is_on_curve_affine(p));
    assert!(all_on_curve);
}

#[test]
fn malformed_inputs_are_rejected() {
    let cv = curves::bn128();
    let text = format_vectors(&generate_vectors(cv, 3, 1)).unwrap();
    let lines: Vec<&str> = text.lines().collect();

    let missing = lines[..lines.len() - 1].join("\n");
    assert!(matches!(parse_vectors(&missing), Err(VectorError::CountMismatch { expected: 6, found: 5 })));

    let mut off = lines.clone();
    let bad_point = format!("{} 3", lines[4].split_whitespace().next().unwrap());
    off[4] = &bad_point;
    assert!(matches!(parse_vectors(&off.join("\n")), Err(VectorError::OffCurve { line: 5 })));

    let mut wide = lines.clone();
    let too_wide = "f".repeat(80);
    wide[1] = &too_wide;
    assert!(matches!(parse_vectors(&wide.join("\n")), Err(VectorError::Malformed { line: 2, .. })));

    let mut junk = lines.clone();
    junk[2] = "xyz";
    assert!(matches!(parse_vectors(&junk.join("\n")), Err(VectorError::Malformed { line: 3, .. })));

    assert!(matches!(parse_vectors("curve=ed25519 m=1\n1\n1 2\n"), Err(VectorError::UnknownCurve(_))));
    assert!(matches!(parse_vectors(""), Err(VectorError::MalformedHeader(_))));
    assert!(matches!(read_vectors(std::path::Path::new("/nonexistent/v.txt")), Err(VectorError::Io(_))));
}

#[test]
fn bench_rows_show_bucket_method_savings() {
    let cv = curves::bn128();
    let vs = generate_vectors(cv, 4096, 2);
    let mut naive = OpCounters::default();
    let mut pip = OpCounters::default();
    msm_naive(&vs.scalars, &vs.points, cv, &mut naive).unwrap();
    msm_pippenger(&vs.scalars, &vs.points, cv, &MsmConfig::new(12, Reduction::RunningSum), &mut pip).unwrap();
    let rows = vec![
        BenchRow::new(cv.name(), "naive", 4096, 0, 1.0, &naive),
        BenchRow::new(cv.name(), "pippenger", 4096, 12, 1.0, &pip),
    ];
    assert!(rows[1].mod_muls < rows[0].mod_muls);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    write_bench_csv(&rows, &path).unwrap();
    let mut rd = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), BENCH_CSV_HEADER.to_vec());
    let recs: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 2);
    assert_eq!(&recs[0][1], "naive");
    assert_eq!(recs[1][6].parse::<u64>().unwrap(), rows[1].mod_muls);
}

#[test]
fn sim_csv_is_machine_readable() {
    let rows: Vec<_> = [1usize, 2]
        .iter()
        .map(|&s| {
            let cfg = SimConfig { bam_count: s, msm_size: 1 << 12, ..Default::default() };
            let r = simulate(&cfg).unwrap();
            (cfg, r)
        })
        .collect();
    let mut buf = Vec::new();
    write_sim_csv(&mut buf, &rows).unwrap();
    let mut rd = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(rd.headers().unwrap().len(), SIM_CSV_HEADER.len());
    let col = SIM_CSV_HEADER.iter().position(|h| *h == "throughput_mpps").unwrap();
    let mpps: Vec<f64> = rd.records().map(|r| r.unwrap()[col].parse().unwrap()).collect();
    assert!(mpps[1] > mpps[0]);
}
