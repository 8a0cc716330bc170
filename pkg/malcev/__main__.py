from malcev.cli import malcev


def main():
    malcev()


if __name__ == "__main__":
    main()
