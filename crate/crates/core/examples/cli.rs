// The command-line front end driven in-process: bounds, then construct,
// verify and export into a scratch directory.

fn main() {
    let dir = std::env::temp_dir().join(format!("qcsc-cli-example-{}", std::process::id()));
    let out = dir.to_str().expect("utf-8 temp path");

    let bounds = qcsc::cli::run([
        "qcsc", "bounds", "--gamma", "3", "--kappa", "7", "--m", "1", "--Z", "34",
    ]);
    println!("bounds exit code {bounds}");

    let construct = qcsc::cli::run([
        "qcsc",
        "--seed",
        "3",
        "--out-dir",
        out,
        "construct",
        "--gamma",
        "3",
        "--kappa",
        "4",
        "--m",
        "1",
        "--Z",
        "8",
    ]);
    println!("construct exit code {construct}");

    let instance = dir.join("instance.json");
    let instance = instance.to_str().expect("utf-8 temp path");
    let verify = qcsc::cli::run(["qcsc", "verify", "--in", instance, "--targets", "c4"]);
    println!("verify exit code {verify}");

    let export = qcsc::cli::run(["qcsc", "--out-dir", out, "export", "--in", instance, "--dense", "h.txt"]);
    println!("export exit code {export}");

    // exit code 2: --Z is required for construct
    let usage = qcsc::cli::run(["qcsc", "construct", "--gamma", "3", "--kappa", "4", "--m", "1"]);
    println!("usage error exit code {usage}");

    let _ = std::fs::remove_dir_all(&dir);
}
