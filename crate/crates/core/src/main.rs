fn main() {
    let code = lebesgue_mesh::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
