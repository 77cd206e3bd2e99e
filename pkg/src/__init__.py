# Preftree
