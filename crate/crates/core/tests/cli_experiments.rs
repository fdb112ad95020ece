use std::process::Command as Process;

use bipartite_ergm::experiments::{run, Command, Config};
use bipartite_ergm::{fixtures, io};

const BIN: &str = env!("CARGO_BIN_EXE_bpergm");

fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn small_sweep() -> Config {
    Config::parse(
        "n_a = 8\nn_b = 6\nterms = Edges=-2\nsweep_terms = FourCyclesNodePowerB[0.5], AltK4CyclesB[2]\n\
         theta_from = -1\ntheta_to = 1\ntheta_step = 1\nburn_in = 2000\ninterval = 200\nsamples = 10\n\
         replicates = 2\nseed = 3\n",
    )
    .unwrap()
}

fn small_configs() -> Vec<(Command, Config)> {
    let text = |s: &str| Config::parse(s).unwrap();
    vec![
        (Command::Stats, text("graph = builtin:southern_women\n")),
        (
            Command::Simulate,
            text("n_a = 6\nn_b = 5\nterms = Edges=-1, FourCycles=0.1\nburn_in = 500\ninterval = 50\nsamples = 20\nseed = 9\n"),
        ),
        (Command::Sweep, small_sweep()),
        (
            Command::Interpret,
            text(
                "n_a = 10\nn_b = 6\nterms = Edges=-3\ninterpret_terms = FourCyclesNodePowerA[0.2], FourCyclesNodePowerB[0.2]\n\
                 interpret_values = -1, 0, 2\nburn_in = 2000\ninterval = 100\nsamples = 5\nreplicates = 2\nseed = 5\n",
            ),
        ),
        (
            Command::Estimate,
            text(
                "graph = builtin:southern_women\nterms = Edges, B2Star2\nalgorithm = ee\nee_steps = 200\nnewton_rounds = 2\n\
                 newton_samples = 200\ncheck_samples = 1000\nburn_in = 2000\ninterval = 200\nseed = 2\n",
            ),
        ),
        (
            Command::Gof,
            text("graph = builtin:southern_women\nterms = Edges=-0.6\nburn_in = 1000\ninterval = 500\nsamples = 12\nmax_len = 6\nseed = 1\n"),
        ),
    ]
}

#[test]
fn every_command_is_deterministic_and_reproducible_from_its_manifest() {
    for (command, cfg) in small_configs() {
        let first = run(command, &cfg).unwrap();
        let second = run(command, &cfg).unwrap();
        assert_eq!(first.body, second.body, "{command:?}");
        let rendered = first.render();
        assert!(rendered.starts_with("# command = "));
        let echoed = Config::from_manifest(&rendered).unwrap();
        assert_eq!(echoed, Config::parse(&cfg.echo()).unwrap());
        let again = run(command, &echoed).unwrap();
        assert_eq!(body(&rendered), again.body, "{command:?}");
    }
}

#[test]
fn sweep_rows_are_ordered_by_term_then_theta() {
    let out = run(Command::Sweep, &small_sweep()).unwrap().body;
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    let thetas: Vec<&str> = rows.iter().map(|r| r[2]).collect();
    assert_eq!(thetas, ["-1", "0", "1", "-1", "0", "1"]);
    assert_eq!(rows[0][0], "FourCyclesNodePowerB");
    assert_eq!(rows[3][0], "AltK4CyclesB");
}

#[test]
fn empty_sweep_range_gives_one_point() {
    let mut cfg = small_sweep();
    cfg.set("theta_to", "-1").unwrap();
    let out = run(Command::Sweep, &cfg).unwrap().body;
    assert_eq!(out.lines().count(), 1 + 2);
}

#[test]
fn binary_writes_output_and_ignores_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("sweep.cfg");
    std::fs::write(&cfg_path, small_sweep().echo()).unwrap();
    let mut bodies = Vec::new();
    for workers in ["1", "3"] {
        let out = dir.path().join(format!("out{workers}.csv"));
        let status = Process::new(BIN)
            .args(["sweep", "--config"])
            .arg(&cfg_path)
            .args(["--workers", workers, "--seed", "17", "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains("# config: seed = 17"));
        bodies.push(body(&text));
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn binary_stats_on_a_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.txt");
    io::save_graph(&fixtures::four_fan(3), std::fs::File::create(&path).unwrap()).unwrap();
    let out = Process::new(BIN).arg("stats").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\nFourCycles,3\n"), "{text}");
    assert!(text.contains("\nAltKCyclesA[2],16.5\n"));
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "n_a = 3\nthis is not a pair\n").unwrap();
    let out = Process::new(BIN).args(["simulate", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = Process::new(BIN).args(["sweep", "--preset", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // a complete 12x12 graph has far too many long cycles to enumerate
    let dense = dir.path().join("dense.txt");
    io::save_graph(&fixtures::complete(12, 12), std::fs::File::create(&dense).unwrap()).unwrap();
    let cfg = dir.path().join("gof.cfg");
    std::fs::write(&cfg, "terms = Edges=0\nsamples = 1\nburn_in = 0\ninterval = 1\nmax_len = 10\n").unwrap();
    let out = Process::new(BIN).arg("gof").arg(&dense).arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
