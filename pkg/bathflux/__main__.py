from bathflux.main import main

raise SystemExit(main())
