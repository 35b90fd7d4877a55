from semibuchi.cli import main

main()
