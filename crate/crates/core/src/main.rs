fn main() {
    std::process::exit(siblings::paperlab::cli_main(std::env::args_os()));
}
