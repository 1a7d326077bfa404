# Inicializador do pacote inedor_app
