GRAMMAR = r"""(* celltrace pipeline scripts, UTF-8, suggested extension .ljk *)

script      = { separator } , [ statement , { separator , { separator } , [ statement ] } ] ;
separator   = newline | ";" ;
statement   = read_csv | write_csv | transform | let | start_log | stop_log | dump_log ;

read_csv    = name , "<-" , "read_csv" , "(" , string , ")" ;
write_csv   = "write_csv" , "(" , name , "," , string , ")" ;
transform   = name , "<-" , "transform" , "(" , name , assignment , { assignment } , ")" ;
assignment  = "," , name , "=" , expr ;
let         = name , "<-" , expr ;                     (* must yield a single value *)
start_log   = "start_log" , "(" , name , "," , [ "logger" , "=" ] , name ,
              "(" , [ literal_arg , { "," , literal_arg } ] , ")" , ")" ;
stop_log    = "stop_log" , "(" , name , { "," , literal_arg } , ")" ;
dump_log    = "dump_log" , "(" , name , { "," , literal_arg } , ")" ;
literal_arg = name , "=" , literal ;                   (* logger = "kind" selects a logger *)

expr        = and_expr , { "|" , and_expr } ;
and_expr    = not_expr , { "&" , not_expr } ;
not_expr    = "!" , not_expr | comparison ;
comparison  = additive , [ ( "==" | "!=" | "<" | "<=" | ">" | ">=" ) , additive ] ;
additive    = term , { ( "+" | "-" ) , term } ;
term        = unary , { ( "*" | "/" ) , unary } ;
unary       = ( "-" | "+" ) , unary | postfix ;
postfix     = primary , [ "$" , name ] ;                (* frame$column *)
primary     = number | string | "TRUE" | "FALSE" | "NA"
            | name , "(" , [ args ] , ")"
            | name
            | "(" , expr , ")" ;
args        = arg , { "," , arg } ;
arg         = [ name , "=" ] , expr ;                  (* named arguments come last *)
literal     = [ "-" ] , number | string | "TRUE" | "FALSE" | "NA" ;

name        = ( letter | "_" | "." ) , { letter | digit | "_" | "." }   (* not "." followed by a digit *)
            | "`" , { any character except "`" and newline } , "`" ;
number      = digits , [ "." , { digit } ] , [ exponent ] | "." , digits , [ exponent ] ;
exponent    = ( "e" | "E" ) , [ "+" | "-" ] , digits ;
string      = '"' , { character | escape } , '"' | "'" , { character | escape } , "'" ;
escape      = "\" , ( "n" | "t" | "r" | "\" | '"' | "'" ) ;
comment     = "#" , { any character except newline } ;  (* ignored *)

(* Newlines inside parentheses are whitespace, so statements may span lines.
   Builtins: is_na(x), abs(x), sqrt(x), ifelse(cond, yes, no),
             mean(x, na_rm = FALSE), sum(x, na_rm = FALSE),
             min(x, na_rm = FALSE), max(x, na_rm = FALSE).
   Logger kinds: simple(), cellwise(key = "col"), expression(name = "expr", ...),
                 filedump(dir = "path"), trivial(). *)
"""
