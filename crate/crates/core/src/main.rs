fn main() {
    std::process::exit(anth_core::cli::run(std::env::args_os()));
}
